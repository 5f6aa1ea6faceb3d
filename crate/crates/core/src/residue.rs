//! Residue computations for the differential, shift, and q-shift operators,
//! and the telescoping decision procedures built on the reductions.
//!
//! Residues here form the complete obstruction data: a rational function is
//! an operator image exactly when all of its residues vanish (and, in the
//! q-shift case, the residue at infinity vanishes as well).

use num_traits::Zero;

use crate::bipoly::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::operators::{sigma_orbit_rep, tau_orbit_rep, OpKind};
use crate::partfrac::partial_fractions;
use crate::ratfunc::RatFunc;
use crate::rational::{pow_i, Rational};
use crate::reduction::{abramov_reduce, hermite_reduce, q_abramov_reduce, theta_rf};
use crate::uniview::{split_ratfunc, view_to_ratfunc, UniView};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueKind {
    Differential,
    Pseudo,
    Shift,
    QShift,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Place {
    Finite(BiPoly),
    Infinity,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

/// Nonzero residues only; places are irreducible, unit-normal, and pairwise
/// in distinct orbits for the orbit notion of the kind.  Residues at finite
/// places are reported with respect to the stored unit-normal base.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueEntry {
    pub place: Place,
    pub multiplicity: u32,
    pub residue: RatFunc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueReport {
    pub var: Var,
    pub kind: ResidueKind,
    pub entries: Vec<ResidueEntry>,
}

impl ResidueReport {
    pub fn all_vanish(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry_at(&self, place: &BiPoly, multiplicity: u32) -> Option<&ResidueEntry> {
        self.entries.iter().find(|e| {
            e.multiplicity == multiplicity
                && matches!(&e.place, Place::Finite(p) if p == place)
        })
    }
}

/// Compute the residues of `f` with respect to one variable and operator
/// kind.  `q` is required exactly for the q-shift kind.
pub fn residues(
    f: &RatFunc,
    var: Var,
    kind: ResidueKind,
    q: Option<&Rational>,
) -> Result<ResidueReport> {
    match kind {
        ResidueKind::Pseudo => pseudo_residues(f, var, false),
        ResidueKind::Differential => pseudo_residues(f, var, true),
        ResidueKind::Shift => orbit_residues(f, var, OpKind::Shift, None),
        ResidueKind::QShift => {
            let q = q.ok_or_else(|| Error::QInvalid("q required for q-shift residues".into()))?;
            orbit_residues(f, var, OpKind::QShift, Some(q))
        }
    }
}

fn pseudo_residues(f: &RatFunc, var: Var, simple_only: bool) -> Result<ResidueReport> {
    let pf = partial_fractions(f, var)?;
    if simple_only {
        if let Some(t) = pf.terms.iter().find(|t| t.power >= 2) {
            return Err(Error::NotSimplePole {
                place: format!("{}", t.base),
            });
        }
    }
    let entries = pf
        .terms
        .into_iter()
        .filter(|t| t.power == 1 && !t.numerator.is_zero())
        .map(|t| ResidueEntry {
            place: Place::Finite(t.base),
            multiplicity: 1,
            residue: t.numerator,
        })
        .collect();
    Ok(ResidueReport {
        var,
        kind: if simple_only {
            ResidueKind::Differential
        } else {
            ResidueKind::Pseudo
        },
        entries,
    })
}

/// Orbit-collapsed residues for the shift and q-shift kinds.  This is an
/// independent computation from the reductions: no telescoping certificate
/// is built, only the aligned numerator sums.
fn orbit_residues(
    f: &RatFunc,
    var: Var,
    kind: OpKind,
    q: Option<&Rational>,
) -> Result<ResidueReport> {
    let mut collapsed: Vec<(BiPoly, u32, RatFunc)> = Vec::new();
    let mut entries: Vec<ResidueEntry> = Vec::new();
    let (poly_part, num, den) = split_ratfunc(f, var);
    if kind == OpKind::QShift {
        let c = poly_part.coeff(0);
        if !c.is_zero() {
            entries.push(ResidueEntry {
                place: Place::Infinity,
                multiplicity: 1,
                residue: c,
            });
        }
    }
    if !num.is_zero() {
        let proper = view_to_ratfunc(&num, var)
            .div(&view_to_ratfunc(&den, var))
            .expect("nonzero");
        let pf = partial_fractions(&proper, var)?;
        for term in pf.terms {
            if kind == OpKind::QShift && term.base == BiPoly::var(var) {
                // powers of the main variable belong to the Laurent part
                continue;
            }
            let v = UniView::from_bipoly(&term.base, var).poly.monic();
            let gamma = RatFunc::from_poly(term.base.clone())
                .div(&view_to_ratfunc(&v, var))
                .expect("nonzero");
            let a = term
                .numerator
                .div(&gamma.pow(term.power as i64).expect("nonzero"))
                .expect("nonzero");
            let (rep, m, unit) = match kind {
                OpKind::Shift => {
                    let (rep, m) = sigma_orbit_rep(&v, var);
                    (rep, m, Rational::from_integer(1.into()))
                }
                OpKind::QShift => tau_orbit_rep(&v, var, q.expect("q present")),
                OpKind::Derivation => unreachable!(),
            };
            let a_adj = a.scale(&pow_i(&unit, -(term.power as i64)));
            let contribution = theta_rf(&a_adj, var, -m, kind, q);
            let base = UniView {
                var,
                poly: rep.clone(),
            }
            .to_unit_normal_bipoly();
            let gamma_rep = RatFunc::from_poly(base.clone())
                .div(&view_to_ratfunc(&rep, var))
                .expect("nonzero");
            let adjusted = contribution.mul(&gamma_rep.pow(term.power as i64).expect("nonzero"));
            accumulate(&mut collapsed, base, term.power, adjusted);
        }
    }
    for (base, power, residue) in collapsed {
        if residue.is_zero() {
            continue;
        }
        entries.push(ResidueEntry {
            place: Place::Finite(base),
            multiplicity: power,
            residue,
        });
    }
    entries.sort_by_key(|e| {
        (
            match &e.place {
                Place::Infinity => (0, String::new()),
                Place::Finite(p) => (1, format!("{}", p)),
            },
            e.multiplicity,
        )
    });
    Ok(ResidueReport {
        var,
        kind: if kind == OpKind::Shift {
            ResidueKind::Shift
        } else {
            ResidueKind::QShift
        },
        entries,
    })
}

fn accumulate(
    collapsed: &mut Vec<(BiPoly, u32, RatFunc)>,
    base: BiPoly,
    power: u32,
    residue: RatFunc,
) {
    for (b, p, acc) in collapsed.iter_mut() {
        if *p == power && *b == base {
            *acc = acc.add(&residue);
            return;
        }
    }
    collapsed.push((base, power, residue));
}

/// Decide whether `f` is an image of the operator for `var` (integrable or
/// summable in the same field), returning an exact witness when it is.
/// Implemented by running the matching reduction and testing the remainder;
/// by the residue criteria this agrees with all residues vanishing.
pub fn decide_telescoping(
    f: &RatFunc,
    var: Var,
    kind: OpKind,
    q: Option<&Rational>,
) -> Result<(bool, Option<RatFunc>)> {
    let result = match kind {
        OpKind::Derivation => hermite_reduce(f, var),
        OpKind::Shift => abramov_reduce(f, var)?,
        OpKind::QShift => {
            let q = q.ok_or_else(|| Error::QInvalid("q required".into()))?;
            q_abramov_reduce(f, var, q)?
        }
    };
    if result.remainder.is_zero() {
        Ok((true, Some(result.certificate)))
    } else {
        Ok((false, None))
    }
}
