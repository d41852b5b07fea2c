//! Executable models of two example Möbius categories.
//!
//! * `C_m`: objects `(x̄, i)` in `Z_m × Z_-`, morphisms `(a, x̄, i, j)` with `0 <= a <= i - j`.
//! * `D_m`: objects `Z_m`, morphisms `(α, x̄)` with `α >= x`, codomain `α mod m`.
//!
//! Residues are stored as canonical representatives in `[0, m)`. The functor
//! `F(a, x̄, i, j) = (a + x, x̄)` relates the two.

mod cm;
mod dm;

pub use cm::{cm_moebius_closed_form, Cm, CmMorphism, CmObject, CmSlice};
pub use dm::{dm_moebius_closed_form, Dm, DmMorphism, DmSlice};

use crate::error::{Error, Result};

/// `F(x̄, i) = x̄`.
pub fn functor_f_object(o: CmObject) -> i64 {
    o.residue
}

/// `F(a, x̄, i, j) = (a + x, x̄)`.
pub fn functor_f(f: &CmMorphism) -> DmMorphism {
    DmMorphism {
        alpha: f.a + f.x,
        x: f.x,
    }
}

pub(crate) fn check_modulus(m: i64) -> Result<()> {
    if m >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidModulus(m))
    }
}

/// Splits `"1,0,0,-2"` into integers, requiring exactly `n` fields.
pub(crate) fn parse_tuple(s: &str, n: usize) -> Result<Vec<i64>> {
    let fields = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{}` is not an integer in `{s}`", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if fields.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} comma-separated integers, got `{s}`"
        )));
    }
    Ok(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functor_examples() {
        let id = CmMorphism::new(0, 2, -3, -3);
        assert_eq!(functor_f(&id), DmMorphism::new(2, 2));
        assert_eq!(
            functor_f(&CmMorphism::new(1, 0, 0, -1)),
            DmMorphism::new(1, 0)
        );
        assert_eq!(
            functor_f(&CmMorphism::new(2, 1, 0, -2)),
            DmMorphism::new(3, 1)
        );
        assert_eq!(functor_f_object(CmObject::new(2, -3)), 2);
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!(parse_tuple("1,1,0,-2", 4).unwrap(), vec![1, 1, 0, -2]);
        assert_eq!(parse_tuple("(4, 2)", 2).unwrap(), vec![4, 2]);
        assert!(parse_tuple("1,2,3", 4).is_err());
        assert!(parse_tuple("1,x", 2).is_err());
    }
}
