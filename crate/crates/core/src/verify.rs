//! Cross-checks of the Möbius function over finite windows of `C_m` and `D_m`.

use std::fmt;

use serde::Serialize;

use crate::category::{CategorySlice, IncidenceFunction};
use crate::error::Result;
use crate::lawvere::{moebius_of_interval, moebius_test, LawvereInterval};
use crate::models::{cm_moebius_closed_form, dm_moebius_closed_form, Cm, Dm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First counterexample, empty on success.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub category: String,
    pub window: String,
    pub objects: usize,
    pub morphisms: usize,
    pub intervals: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}: {} objects, {} morphisms, {} intervals checked",
            self.category, self.window, self.objects, self.morphisms, self.intervals
        )?;
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {verdict} {}", c.name)?;
            } else {
                writeln!(f, "  {verdict} {}: {}", c.name, c.detail)?;
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Collects the first failure of a named check.
struct Tally {
    name: &'static str,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            failure: None,
        }
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.to_string(),
            passed: self.failure.is_none(),
            detail: self.failure.unwrap_or_default(),
        }
    }
}

fn convolution_checks(c: &CategorySlice) -> Check {
    let mut t = Tally::new("μ∗ζ = δ and ζ∗μ = δ");
    match c.moebius() {
        Ok(mu) => {
            let zeta = IncidenceFunction::zeta(c);
            let delta = IncidenceFunction::delta(c);
            for (left, right, name) in [(&mu, &zeta, "μ∗ζ"), (&zeta, &mu, "ζ∗μ")] {
                match c.convolve_all(left, right) {
                    Ok(v) => t.expect(v == delta, || format!("{name} differs from δ")),
                    Err(e) => t.expect(false, || e.to_string()),
                }
            }
        }
        Err(e) => t.expect(false, || e.to_string()),
    }
    t.finish()
}

fn axioms_check(c: &CategorySlice) -> Check {
    let mut t = Tally::new("category axioms");
    if let Err(v) = c.validate() {
        t.expect(false, || v.to_string());
    }
    t.finish()
}

fn one_way_check(c: &CategorySlice) -> Check {
    let mut t = Tally::new("every Lawvere interval finite and one-way");
    t.expect(moebius_test(c), || "some interval is not one-way".into());
    t.finish()
}

/// Builds the `C_m` window on levels `level_min..=0` and checks category axioms,
/// one-wayness, lattice intervals, three-way μ agreement and the convolution identities.
pub fn verify_cm(m: i64, level_min: i64) -> Result<VerifyReport> {
    let cm = Cm::new(m)?;
    let window = cm.slice(level_min)?;
    let c = window.category();
    let conv = c.moebius_values();

    let mut lattices = Tally::new("every interval is a finite lattice with singleton hom-sets");
    let mut agree = Tally::new("closed form = Lawvere interval μ = convolution μ");
    for (mor, f) in window.iter() {
        let iv = LawvereInterval::new(c, mor)?;
        lattices.expect(iv.max_hom_size() <= 1, || {
            format!("{f}: hom-set of size {}", iv.max_hom_size())
        });
        let lattice = iv.to_poset().map(|p| p.is_lattice()).unwrap_or(false);
        lattices.expect(lattice, || format!("{f}: interval is not a lattice"));

        let closed = cm_moebius_closed_form(&f);
        let lawvere = moebius_of_interval(c, &iv);
        let convolution = conv.as_ref().map(|v| v[mor.0]);
        agree.expect(
            lawvere.as_ref() == Ok(&closed) && convolution.as_ref() == Ok(&closed),
            || format!("{f}: closed {closed}, Lawvere {lawvere:?}, convolution {convolution:?}"),
        );
    }

    Ok(VerifyReport {
        category: format!("C_{m}"),
        window: format!("level_min={level_min}"),
        objects: c.num_objects(),
        morphisms: c.num_morphisms(),
        intervals: c.num_morphisms(),
        checks: vec![
            axioms_check(c),
            one_way_check(c),
            lattices.finish(),
            agree.finish(),
            convolution_checks(c),
        ],
    })
}

/// Same checks for the `D_m` window `α <= alpha_max`; intervals must be chains of
/// `α - x + 1` factorizations.
pub fn verify_dm(m: i64, alpha_max: i64) -> Result<VerifyReport> {
    let dm = Dm::new(m)?;
    let window = dm.slice(alpha_max)?;
    let c = window.category();
    let conv = c.moebius_values();

    let mut chains = Tally::new("every interval is a chain of α - x + 1 factorizations");
    let mut agree = Tally::new("closed form = Lawvere interval μ = convolution μ");
    for (mor, f) in window.iter() {
        let iv = LawvereInterval::new(c, mor)?;
        let chain = iv.to_poset().map(|p| p.is_chain()).unwrap_or(false);
        chains.expect(chain && iv.len() as i64 == f.alpha - f.x + 1, || {
            format!("{f}: {} factorizations, chain: {chain}", iv.len())
        });

        let closed = dm_moebius_closed_form(&f);
        let lawvere = moebius_of_interval(c, &iv);
        let convolution = conv.as_ref().map(|v| v[mor.0]);
        agree.expect(
            lawvere.as_ref() == Ok(&closed) && convolution.as_ref() == Ok(&closed),
            || format!("{f}: closed {closed}, Lawvere {lawvere:?}, convolution {convolution:?}"),
        );
    }

    Ok(VerifyReport {
        category: format!("D_{m}"),
        window: format!("alpha_max={alpha_max}"),
        objects: c.num_objects(),
        morphisms: c.num_morphisms(),
        intervals: c.num_morphisms(),
        checks: vec![
            axioms_check(c),
            one_way_check(c),
            chains.finish(),
            agree.finish(),
            convolution_checks(c),
        ],
    })
}
