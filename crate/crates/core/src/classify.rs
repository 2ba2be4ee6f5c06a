//! Graph-side hypothesis checks for the classification results, and the
//! obstruction to unital graded homomorphisms.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, PisReport};
use crate::intlin::{hom_exists_with_value, iso_with_element_constraint, FgAbelianGroup, GroupHom, IntMatrix};
use crate::invariants::{bf, bf_twisted, BfData};
use crate::lifting::{lift_iso, ChainMapCertificate};

/// A hypothesis on the ground ring that cannot be checked from the graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RingHypothesis {
    RegularSupercoherent,
    TwoInvertible,
    MinusOnePositive,
}

impl fmt::Display for RingHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingHypothesis::RegularSupercoherent => "regular supercoherent",
            RingHypothesis::TwoInvertible => "2 invertible",
            RingHypothesis::MinusOnePositive => "-1 positive",
        })
    }
}

/// Ring properties the caller vouches for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RingFlags {
    pub regular_supercoherent: bool,
    pub two_invertible: bool,
    pub minus_one_positive: bool,
}

impl RingFlags {
    pub fn asserts(&self, h: RingHypothesis) -> bool {
        match h {
            RingHypothesis::RegularSupercoherent => self.regular_supercoherent,
            RingHypothesis::TwoInvertible => self.two_invertible,
            RingHypothesis::MinusOnePositive => self.minus_one_positive,
        }
    }
}

/// A classification result whose graph-side hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApplicableTheorem {
    pub name: &'static str,
    pub conclusion: &'static str,
    pub ring_hypotheses: Vec<RingHypothesis>,
    /// The unital refinement is available: some isomorphism matches units.
    pub unital: bool,
}

impl ApplicableTheorem {
    pub fn holds_under(&self, flags: &RingFlags) -> bool {
        self.ring_hypotheses.iter().all(|&h| flags.asserts(h))
    }
}

/// Outcome of the search for an isomorphism carrying `[1]_E` to `[1]_F`.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum UnitalMatch {
    Found(GroupHom),
    None,
    /// The groups are infinite, or too large to search.
    Unsupported(&'static str),
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub pis_e: PisReport,
    pub pis_f: PisReport,
    pub bf_e: BfData,
    pub bf_f: BfData,
    /// Identity in canonical coordinates when the invariant factors agree.
    pub bf_iso: Option<GroupHom>,
    pub unital: UnitalMatch,
    /// Chain-level lift of the unital isomorphism if there is one, else of
    /// `bf_iso`.
    pub certificate: Option<ChainMapCertificate>,
    pub applicable_theorems: Vec<ApplicableTheorem>,
}

impl ClassificationReport {
    pub fn unital_iso(&self) -> Option<&GroupHom> {
        match &self.unital {
            UnitalMatch::Found(h) => Some(h),
            _ => None,
        }
    }

    pub fn applicable_under(&self, flags: &RingFlags) -> impl Iterator<Item = &ApplicableTheorem> + '_ {
        let flags = *flags;
        self.applicable_theorems.iter().filter(move |t| t.holds_under(&flags))
    }
}

fn find_bf_iso(a: &FgAbelianGroup, b: &FgAbelianGroup) -> Option<GroupHom> {
    if !a.is_isomorphic_to(b) {
        return None;
    }
    Some(GroupHom::new(a.clone(), b.clone(), IntMatrix::identity(a.num_gens())).expect("same invariant factors"))
}

pub fn classify_pair(e: &Graph, f: &Graph) -> ClassificationReport {
    let pis_e = e.purely_infinite_simple_report();
    let pis_f = f.purely_infinite_simple_report();
    let bf_e = bf(e);
    let bf_f = bf(f);
    let bf_iso = find_bf_iso(&bf_e.group, &bf_f.group);

    let unital = if bf_iso.is_none() {
        UnitalMatch::None
    } else if !bf_e.group.is_finite() {
        UnitalMatch::Unsupported("unit-class matching unsupported for infinite BF")
    } else {
        match iso_with_element_constraint(&bf_e.group, &bf_e.unit_class, &bf_f.group, &bf_f.unit_class) {
            Ok(Some(h)) => UnitalMatch::Found(h),
            Ok(None) => UnitalMatch::None,
            Err(_) => UnitalMatch::Unsupported("group too large for unit-class search"),
        }
    };

    let chosen = match &unital {
        UnitalMatch::Found(h) => Some(h),
        _ => bf_iso.as_ref(),
    };
    let certificate = chosen.and_then(|xi0| lift_iso(&e.bf_matrix(), &f.bf_matrix(), xi0).ok());

    let mut applicable_theorems = Vec::new();
    if pis_e.purely_infinite_simple && pis_f.purely_infinite_simple && bf_iso.is_some() {
        let unital_found = matches!(unital, UnitalMatch::Found(_));
        use RingHypothesis::*;
        applicable_theorems.push(ApplicableTheorem {
            name: "stable involutive classification",
            conclusion: "very full *-homomorphisms into M_± with M_±2-*-homotopy inverses up to stabilization",
            ring_hypotheses: alloc::vec![RegularSupercoherent, TwoInvertible],
            unital: false,
        });
        applicable_theorems.push(ApplicableTheorem {
            name: "involutive classification",
            conclusion: "very full *-homomorphisms that are M_±2-*-homotopy inverse",
            ring_hypotheses: alloc::vec![RegularSupercoherent, TwoInvertible, MinusOnePositive],
            unital: unital_found,
        });
        applicable_theorems.push(ApplicableTheorem {
            name: "algebraic classification",
            conclusion: "algebra homomorphisms that are M_2-homotopy inverse",
            ring_hypotheses: alloc::vec![RegularSupercoherent],
            unital: unital_found,
        });
    }

    ClassificationReport { pis_e, pis_f, bf_e, bf_f, bf_iso, unital, certificate, applicable_theorems }
}

/// Whether a group homomorphism between the twisted Bowen–Franks groups can
/// send `[1]_E` to `[1]_F`. Its absence rules out unital `Z/2`-graded
/// algebra homomorphisms `L(E) → L(F)` when `Z → K_0(ℓ)` is an isomorphism
/// and `ℓ` is regular supercoherent.
#[derive(Clone, Debug)]
pub struct GradedObstruction {
    pub possible: bool,
    pub witness: Option<GroupHom>,
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
}

impl fmt::Display for GradedObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.possible {
            write!(f, "a homomorphism {} -> {} preserving [1] exists", self.source, self.target)
        } else {
            write!(f, "no homomorphism {} -> {} sends [1] to [1]", self.source, self.target)
        }
    }
}

pub fn graded_hom_obstruction(e: &Graph, f: &Graph) -> GradedObstruction {
    let te = bf_twisted(e);
    let tf = bf_twisted(f);
    let source = te.module.underlying().clone();
    let target = tf.module.underlying().clone();
    let witness = hom_exists_with_value(&source, &te.unit_class, &target, &tf.unit_class);
    GradedObstruction { possible: witness.is_some(), witness, source, target }
}
