//! Oracles shared by the integration tests. None of these go through the library's
//! Möbius recursion, factorization index or composition tables.
#![allow(dead_code, clippy::needless_range_loop)]

use moebius_core::models::{Cm, CmMorphism, CmObject};
use moebius_core::FinitePoset;

/// Classical number-theoretic Möbius function by trial division.
pub fn classical_moebius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Möbius value of a chain with `k` steps from bottom to top.
pub fn chain_moebius(k: i64) -> i64 {
    match k {
        0 => 1,
        1 => -1,
        _ => 0,
    }
}

/// Hall's theorem: μ(x, y) = Σ_k (-1)^k · #{chains x = z_0 < ... < z_k = y}.
pub fn hall_moebius(p: &FinitePoset, x: usize, y: usize) -> i64 {
    let n = p.len();
    // chains[z] = signed count of strict chains from x ending at z
    let mut signed = vec![0i64; n];
    let mut current = vec![0i64; n];
    current[x] = 1;
    signed[x] = 1;
    for _ in 1..n {
        let mut next = vec![0i64; n];
        for a in 0..n {
            if current[a] == 0 {
                continue;
            }
            for b in 0..n {
                if p.lt(a, b) && p.leq(b, y) {
                    next[b] -= current[a];
                }
            }
        }
        for z in 0..n {
            signed[z] += next[z];
        }
        current = next;
    }
    signed[y]
}

/// Order isomorphism by backtracking; fine for the small posets used in tests.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    fn extend(
        p: &FinitePoset,
        q: &FinitePoset,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = map.len();
        if k == p.len() {
            return true;
        }
        for cand in 0..q.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..k)
                .all(|i| p.leq(i, k) == q.leq(map[i], cand) && p.leq(k, i) == q.leq(cand, map[i]));
            if ok {
                map.push(cand);
                used[cand] = true;
                if extend(p, q, map, used) {
                    return true;
                }
                map.pop();
                used[cand] = false;
            }
        }
        false
    }
    p.len() == q.len() && extend(p, q, &mut Vec::new(), &mut vec![false; q.len()])
}

/// Every morphism of the `C_m` window on `level_min..=0`, found by testing the hom-set
/// membership predicate on all candidate quadruples.
pub fn cm_window_brute_force(m: i64, level_min: i64) -> Vec<CmMorphism> {
    let mut out = Vec::new();
    let span = -level_min;
    for x in 0..m {
        for i in level_min..=0 {
            for j in level_min..=0 {
                for a in 0..=span {
                    if a <= i - j {
                        out.push(CmMorphism::new(a, x, i, j));
                    }
                }
            }
        }
    }
    out
}

/// Membership of `f` in `Hom((x̄, i), (ȳ, j))` straight from the definition.
pub fn cm_member(m: i64, f: &CmMorphism, src: CmObject, tgt: CmObject) -> bool {
    f.x == src.residue
        && f.i == src.level
        && f.j == tgt.level
        && f.a >= 0
        && f.a <= f.i - f.j
        && (f.a + f.x) % m == tgt.residue
}

/// All `(g, h)` among `morphisms` with `g ∘ h = f`, using the composition formula
/// `(b, ȳ, j, k) ∘ (a, x̄, i, j) = (a + b, x̄, i, k)` with endpoint matching.
pub fn cm_factor_pairs(
    m: i64,
    morphisms: &[CmMorphism],
    f: &CmMorphism,
) -> Vec<(CmMorphism, CmMorphism)> {
    let mut out = Vec::new();
    for h in morphisms {
        for g in morphisms {
            let composable = g.x == (h.a + h.x) % m && g.i == h.j;
            if composable && h.x == f.x && h.i == f.i && g.j == f.j && h.a + g.a == f.a {
                out.push((*g, *h));
            }
        }
    }
    out
}

pub fn cm(m: i64) -> Cm {
    Cm::new(m).unwrap()
}
