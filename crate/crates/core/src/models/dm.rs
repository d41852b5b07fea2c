use std::fmt;

use crate::category::{CategorySlice, Mor, SliceBuilder};
use crate::error::{Error, Result};

use super::{check_modulus, parse_tuple};

/// Morphism `(α, x̄): x̄ -> ᾱ` of `D_m`, with `α >= x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DmMorphism {
    pub alpha: i64,
    pub x: i64,
}

impl DmMorphism {
    pub fn new(alpha: i64, x: i64) -> Self {
        DmMorphism { alpha, x }
    }

    pub fn identity(x: i64) -> Self {
        DmMorphism::new(x, x)
    }

    /// Parses the positional form `alpha,x`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = parse_tuple(s, 2)?;
        Ok(DmMorphism::new(v[0], v[1]))
    }

    pub fn key(&self) -> String {
        self.to_string()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == self.x
    }
}

impl fmt::Display for DmMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.x)
    }
}

/// The category `D_m` for a fixed modulus `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dm {
    m: i64,
}

impl Dm {
    pub fn new(m: i64) -> Result<Self> {
        check_modulus(m)?;
        Ok(Dm { m })
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    fn check_residue(&self, x: i64) -> Result<()> {
        if (0..self.m).contains(&x) {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(format!(
                "residue {x} is not a representative in [0, {})",
                self.m
            )))
        }
    }

    pub fn check(&self, f: &DmMorphism) -> Result<()> {
        self.check_residue(f.x)?;
        if f.alpha < f.x {
            return Err(Error::InvalidMorphism(format!("{f} needs alpha >= x")));
        }
        Ok(())
    }

    pub fn codomain(&self, f: &DmMorphism) -> i64 {
        f.alpha.rem_euclid(self.m)
    }

    /// Morphisms `x̄ -> ȳ` with `α <= alpha_max`, by ascending `α`. Hom-sets are infinite,
    /// so the bound is required.
    pub fn hom_bounded(&self, x: i64, y: i64, alpha_max: i64) -> Result<Vec<DmMorphism>> {
        self.check_residue(x)?;
        self.check_residue(y)?;
        Ok((x..=alpha_max)
            .filter(|alpha| alpha.rem_euclid(self.m) == y)
            .map(|alpha| DmMorphism::new(alpha, x))
            .collect())
    }

    /// `g · f`: `(β, ȳ) · (α, x̄) = (β - y + α, x̄)`.
    pub fn compose(&self, g: &DmMorphism, f: &DmMorphism) -> Result<DmMorphism> {
        if self.codomain(f) != g.x {
            return Err(Error::NotComposable(format!(
                "codomain {} of {f} is not the domain {} of {g}",
                self.codomain(f),
                g.x
            )));
        }
        Ok(DmMorphism::new(g.alpha - g.x + f.alpha, f.x))
    }

    /// Factorizations `(left, right)` of `f`: one through each `γ` in `[x, α]`, with
    /// `right = (γ, x̄)` and `left = (α - γ + y, ȳ)` for `y = γ mod m`.
    pub fn factorizations(&self, f: &DmMorphism) -> Vec<(DmMorphism, DmMorphism)> {
        (f.x..=f.alpha)
            .map(|gamma| {
                let y = gamma.rem_euclid(self.m);
                (
                    DmMorphism::new(f.alpha - gamma + y, y),
                    DmMorphism::new(gamma, f.x),
                )
            })
            .collect()
    }

    /// All morphisms with `α <= alpha_max`. Both factors of `(α, x̄)` have their own `α`
    /// at most `α`, so every morphism is complete.
    pub fn slice(&self, alpha_max: i64) -> Result<DmSlice> {
        if alpha_max < 0 {
            return Err(Error::InvalidWindow(format!(
                "alpha_max must be >= 0, got {alpha_max}"
            )));
        }
        let residues: Vec<i64> = (0..self.m).filter(|&x| x <= alpha_max).collect();
        let mut b = SliceBuilder::new();
        for &x in &residues {
            b.add_object(x.to_string())?;
        }
        let mut payload = Vec::new();
        for &x in &residues {
            let dom = b.object(&x.to_string()).expect("object added");
            for alpha in x..=alpha_max {
                let f = DmMorphism::new(alpha, x);
                let cod = b
                    .object(&self.codomain(&f).to_string())
                    .expect("codomain residue is at most alpha");
                let mor = b.add_morphism(f.key(), dom, cod)?;
                if f.is_identity() {
                    b.set_identity(dom, mor)?;
                }
                payload.push(f);
            }
        }
        b.fill_composites(|g, h| {
            let (g, h) = (&payload[g.0], &payload[h.0]);
            Some(DmMorphism::new(g.alpha - g.x + h.alpha, h.x).key())
        })?;
        b.mark_all_complete();
        Ok(DmSlice {
            dm: *self,
            alpha_max,
            slice: b.build()?,
            payload,
        })
    }
}

/// Closed-form Möbius function of `D_m`: 1 if `α = x`, -1 if `α = x + 1`, else 0.
pub fn dm_moebius_closed_form(f: &DmMorphism) -> i64 {
    match f.alpha - f.x {
        0 => 1,
        1 => -1,
        _ => 0,
    }
}

#[derive(Debug, Clone)]
pub struct DmSlice {
    dm: Dm,
    alpha_max: i64,
    slice: CategorySlice,
    payload: Vec<DmMorphism>,
}

impl DmSlice {
    pub fn dm(&self) -> Dm {
        self.dm
    }

    pub fn alpha_max(&self) -> i64 {
        self.alpha_max
    }

    pub fn category(&self) -> &CategorySlice {
        &self.slice
    }

    pub fn morphism(&self, m: Mor) -> DmMorphism {
        self.payload[m.0]
    }

    pub fn find(&self, f: &DmMorphism) -> Option<Mor> {
        self.slice.morphism(&f.key())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mor, DmMorphism)> + '_ {
        self.payload.iter().enumerate().map(|(i, f)| (Mor(i), *f))
    }
}
