//! Named, self-contained reproduction scenarios.

use matfold_core::exact::rational::parse_rational;
use matfold_core::{MatPoly, Poly, Rational};
use serde_json::Value;

use crate::report::Report;

mod controls;
mod krall_jacobi;
mod krall_laguerre;
mod laguerre;

pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    pub run: fn() -> Report,
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "roundtrip",
        summary: "split/unfold round trip on random polynomials",
        run: laguerre::roundtrip,
    },
    Scenario {
        name: "laguerre-2x2",
        summary: "2x2 fold of the Laguerre operator and its eigenvalues",
        run: laguerre::laguerre_2x2,
    },
    Scenario {
        name: "laguerre-nxn",
        summary: "sampled N x N fold of the Laguerre operator for N = 3, 4",
        run: laguerre::laguerre_nxn,
    },
    Scenario {
        name: "krall-laguerre-scalar",
        summary: "Krall-Laguerre construction, five-term recurrence and fourth-order equation",
        run: krall_laguerre::scalar,
    },
    Scenario {
        name: "krall-laguerre-algebra",
        summary: "matrix operator space of the folded Krall-Laguerre family",
        run: krall_laguerre::algebra,
    },
    Scenario {
        name: "symmetrization",
        summary: "scalar and matrix symmetrization of the Krall recurrences",
        run: krall_laguerre::symmetrization,
    },
    Scenario {
        name: "orthogonality",
        summary: "exact Gram blocks of folded families against moment functionals",
        run: krall_laguerre::orthogonality,
    },
    Scenario {
        name: "krall-jacobi",
        summary: "Krall-Jacobi dual relation, recurrence and the PQ operator",
        run: krall_jacobi::scalar,
    },
    Scenario {
        name: "kj-generic",
        summary: "matrix operator space of a generic Krall-Jacobi fold up to order 6",
        run: krall_jacobi::generic,
    },
    Scenario {
        name: "kj-shift-loworder",
        summary: "low-order matrix operators when beta = alpha + 1",
        run: krall_jacobi::shift_loworder,
    },
    Scenario {
        name: "one-way-street",
        summary: "folded scalar operators lie in the matrix space, not conversely",
        run: krall_jacobi::one_way_street,
    },
    Scenario {
        name: "negative-controls",
        summary: "corrupted inputs are detected",
        run: controls::negative_controls,
    },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

pub fn run(name: &str) -> Option<Report> {
    find(name).map(|s| (s.run)())
}

/// A rational constant written as `"p/q"`.
pub(crate) fn q(s: &str) -> Rational {
    parse_rational(s).unwrap_or_else(|e| panic!("bad constant {s:?}: {e}"))
}

/// A polynomial from rational-string coefficients, low to high.
pub(crate) fn qp(cs: &[&str]) -> Poly {
    Poly::new(cs.iter().map(|c| q(c)).collect())
}

pub(crate) fn mat2(a: Poly, b: Poly, c: Poly, d: Poly) -> MatPoly {
    MatPoly::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

pub(crate) fn s(r: &Rational) -> Value {
    Value::String(matfold_core::exact::rational::format_rational(r))
}
