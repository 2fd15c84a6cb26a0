"""
The library's regression corpus: every shipped construction with its expected
solution tables, coefficient family, twist scalars and diagram data.

Each fixture bundles a finite solution together with the values its pipeline
must reproduce: iso-class counts of the enumeration, the solved coefficient
family (free parameters, relations, torsion conditions), the twist scalars,
a concrete verification point, and, for the involutive examples, the labels
of the resulting diagonal diagram.  ``run_fixture`` executes all checks for
one entry and reports per-check outcomes; the CLI's ``fixtures run`` drives
the whole corpus.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

from .braided import BraidedSpace, ybe_coefficient_system
from .dynkin import GDD, check_tau_symmetry, gdd
from .multsolve import (
    canonical_torsion_orders,
    is_identity_modulo,
    same_condition_lattice,
    smith_normal_form,
    solve,
)
from .permkit import Permutation, parse_cycles
from .scalars import CycScalar, Monomial, parse_monomial, zeta
from .solutions import (
    NearRackSolution,
    Rack,
    affine_rack,
    conjugation_rack,
    conjugacy_class,
    derived_rack,
    dihedral_rack,
    enum_near_racks,
    involutive_representative,
    isomorphic,
    near_rack_from,
    verify,
)
from .tequiv import (
    TEquivCertificate,
    instantiate_certificate,
    solve_tequiv,
    verify_certificate,
    z_system,
)
from .permkit import all_permutations, from_cycles


# ---------------------------------------------------------------------------
# printed rack tables
# ---------------------------------------------------------------------------

TRANSPOSITIONS_S4_TABLE = (
    (1, 4, 5, 2, 3, 6),
    (4, 2, 6, 1, 5, 3),
    (5, 6, 3, 4, 1, 2),
    (2, 1, 3, 4, 6, 5),
    (3, 2, 1, 6, 5, 4),
    (1, 3, 2, 5, 4, 6),
)

THREECYCLES_ALT4_TABLE = (
    (1, 3, 4, 2),
    (4, 2, 1, 3),
    (2, 4, 3, 1),
    (3, 1, 2, 4),
)

TRANSPOSITIONS_S5_TABLE = (
    (1, 5, 6, 7, 2, 3, 4, 8, 9, 10),
    (5, 2, 8, 9, 1, 6, 7, 3, 4, 10),
    (6, 8, 3, 10, 5, 1, 7, 2, 9, 4),
    (7, 9, 10, 4, 5, 6, 1, 8, 2, 3),
    (2, 1, 3, 4, 5, 8, 9, 6, 7, 10),
    (3, 2, 1, 4, 8, 6, 10, 5, 9, 7),
    (4, 2, 3, 1, 9, 10, 7, 8, 5, 6),
    (1, 3, 2, 4, 6, 5, 7, 8, 10, 9),
    (1, 4, 3, 2, 7, 6, 5, 10, 9, 8),
    (1, 2, 4, 3, 5, 7, 6, 9, 8, 10),
)


def _near_rack(n: int, sigmas: Sequence[str], tau: str) -> NearRackSolution:
    return NearRackSolution.from_parts(
        [parse_cycles(c, n) for c in sigmas], parse_cycles(tau, n)
    )


# printed near-rack solutions, keyed by construction
PRINTED_SOLUTIONS: dict[str, list[NearRackSolution]] = {
    "dihedral3": [_near_rack(3, ("id", "(1,3,2)", "(1,2,3)"), "(2,3)")],
    "transpositions-s4": [
        _near_rack(
            6,
            ("id", "(1,4,2)(3,5,6)", "(1,5,3)(2,4,6)", "(1,2,4)(3,6,5)",
             "(1,3,5)(2,6,4)", "(2,5)(3,4)"),
            "(2,4)(3,5)",
        ),
        _near_rack(
            6,
            ("(2,3)(4,5)", "(1,4,6,3)(2,5)", "(1,5,6,2)(3,4)",
             "(1,2,6,5)(3,4)", "(1,3,6,4)(2,5)", "(2,4)(3,5)"),
            "(2,5)(3,4)",
        ),
    ],
    "threecycles-alt4": [
        _near_rack(4, ("(1,2,4)", "(1,3,2)", "(2,3,4)", "(1,4,3)"), "(1,4)(2,3)")
    ],
    "fourcycles-s4": [
        _near_rack(
            6,
            ("(2,3,5,4)", "(1,3)(2,5)(4,6)", "(1,5)(2,6)(3,4)",
             "(1,2)(3,4)(5,6)", "(1,4)(2,5)(3,6)", "(2,4,5,3)"),
            "(2,5)(3,4)",
        ),
        # the second table lists sigma_5 twice; the latter entry is sigma_6
        _near_rack(
            6,
            ("(1,2,3)(4,6,5)", "(1,6)(2,5)", "(1,3,5)(2,6,4)",
             "(1,3,2)(4,5,6)", "(2,5)(3,4)", "(1,5,3)(2,4,6)"),
            "(1,3)(2,5)(4,6)",
        ),
    ],
    "aff52": [
        _near_rack(
            5, ("(2,4,5,3)", "(1,5,2,3)", "(1,4,3,5)", "(1,3,4,2)", "(1,2,5,4)"),
            "(2,5)(3,4)",
        )
    ],
    "aff53": [
        _near_rack(
            5, ("(2,3,5,4)", "(1,4,5,2)", "(1,2,4,3)", "(1,5,3,4)", "(1,3,2,5)"),
            "(2,5)(3,4)",
        )
    ],
    "aff73": [
        _near_rack(
            7,
            ("(2,5,3)(4,6,7)", "(1,6,5)(2,3,7)", "(1,4,2)(3,5,6)",
             "(1,2,6)(4,7,5)", "(1,7,3)(2,4,5)", "(1,5,7)(3,6,4)",
             "(1,3,4)(2,7,6)"),
            "(2,7)(3,6)(4,5)",
        )
    ],
    "aff75": [
        _near_rack(
            7,
            ("(2,3,5)(4,7,6)", "(1,4,3)(2,6,7)", "(1,7,5)(3,4,6)",
             "(1,3,7)(2,5,4)", "(1,6,2)(4,5,7)", "(1,2,4)(3,6,5)",
             "(1,5,6)(2,7,3)"),
            "(2,7)(3,6)(4,5)",
        )
    ],
    "transpositions-s5": [
        _near_rack(
            10,
            ("id", "(1,5,2)(3,6,8)(4,7,9)", "(1,6,3)(2,5,8)(4,7,10)",
             "(1,7,4)(2,5,9)(3,6,10)", "(1,2,5)(3,8,6)(4,9,7)",
             "(1,3,6)(2,8,5)(4,10,7)", "(1,4,7)(2,9,5)(3,10,6)",
             "(2,6)(3,5)(4,7)(9,10)", "(2,7)(3,6)(4,5)(8,10)",
             "(2,5)(3,7)(4,6)(8,9)"),
            "(2,5)(3,6)(4,7)",
        ),
        _near_rack(
            10,
            ("(3,4)(6,7)(8,9)", "(1,5,2)(3,7,8,4,6,9)",
             "(1,6,10,4)(2,5,8,9)(3,7)", "(1,7,10,3)(2,5,9,8)(4,6)",
             "(1,2,5)(3,9,6,4,8,7)", "(1,3,10,7)(2,8,9,5)(4,6)",
             "(1,4,10,6)(2,9,8,5)(3,7)", "(2,6,4,5,3,7)(8,10,9)",
             "(2,7,3,5,4,6)(8,9,10)", "(2,5)(3,6)(4,7)"),
            "(2,5)(3,7)(4,6)(8,9)",
        ),
    ],
}


def _s4_elements():
    return list(all_permutations(4))


def _alt4_elements():
    return [
        p
        for p in all_permutations(4)
        if sum(1 for i in range(1, 5) for j in range(i + 1, 5) if p(i) > p(j)) % 2 == 0
    ]


def _s5_elements():
    return list(all_permutations(5))


RACK_BUILDERS: dict[str, Callable[[], Rack]] = {
    "dihedral3": lambda: dihedral_rack(3),
    "transpositions-s4": lambda: conjugation_rack(
        conjugacy_class(from_cycles(4, [(1, 2)]), _s4_elements())
    ),
    "threecycles-alt4": lambda: conjugation_rack(
        conjugacy_class(from_cycles(4, [(1, 2, 3)]), _alt4_elements())
    ),
    # no ordering is printed for this class; the rack is recovered from the
    # first listed solution
    "fourcycles-s4": lambda: derived_rack(
        PRINTED_SOLUTIONS["fourcycles-s4"][0].base
    ),
    "aff52": lambda: affine_rack(5, 2),
    "aff53": lambda: affine_rack(5, 3),
    "aff73": lambda: affine_rack(7, 3),
    "aff75": lambda: affine_rack(7, 5),
    "transpositions-s5": lambda: conjugation_rack(
        conjugacy_class(from_cycles(5, [(1, 2)]), _s5_elements())
    ),
}

EXPECTED_CLASS_COUNTS = {
    "dihedral3": 1,
    "transpositions-s4": 2,
    "threecycles-alt4": 1,
    "fourcycles-s4": 2,
    "aff52": 1,
    "aff53": 1,
    "aff73": 1,
    "aff75": 1,
    "transpositions-s5": 2,
}

PRINTED_RACK_TABLES = {
    "transpositions-s4": TRANSPOSITIONS_S4_TABLE,
    "threecycles-alt4": THREECYCLES_ALT4_TABLE,
    "transpositions-s5": TRANSPOSITIONS_S5_TABLE,
}


# ---------------------------------------------------------------------------
# coefficient families and twist scalars
# ---------------------------------------------------------------------------
# relation tables transcribed from the source material; the runner verifies
# each one by substituting it into every braid-coefficient equation

_DIHEDRAL3_RELS = {
    "x3": "x2^2/x1",
    "x6": "x1",
    "x7": "x1*x2/x5",
    "x8": "x1",
    "x9": "x2^2/x4",
}
_DIHEDRAL3_Z = {
    "z1": "1",
    "z2": "(x4*x5/x1^2)^(1/3)",
    "z3": "(x1^2/(x4*x5))^(1/3)",
}

_ALT4_3CYCLES_RELS = {
    "x2": "(x3^(3))/(x1*x4)",
    "x7": "x4",
    "x8": "(x3^(2)*x4*x5)/(x1^(2)*x6)",
    "x9": "(x3*x4^(2))/(x1*x6)",
    "x10": "x4",
    "x11": "(x3*x4)/(x5)",
    "x12": "(x3^(2)*x4^(4)*x5)/(x1^(3)*x6^(3))",
    "x13": "x4",
    "x14": "(x3^(2)*x4^(3)*x5)/(x1^(3)*x6^(2))",
    "x15": "(x3*x4^(3))/(x1^(2)*x6)",
    "x16": "(x4^(3)*x5)/(x1*x3*x6)",
}
_ALT4_3CYCLES_Z = {
    "z1": "1",
    "z2": "(x1*x6)/(x3^(2))",
    "z3": "(x3^(3)*x4^(3)*x5)/(x1^(4)*x6^(3))",
    "z4": "(x3*x4^(3)*x5)/(x1^(3)*x6^(2))",
}

_S4_4CYCLES_1_RELS = {
    "x5": "(x1^(4))/(x2*x3*x4)",
    "x8": "(x2^(2)*x3^(2))/(x1^(2)*x6)",
    "x9": "(x2^(2)*x3^(2))/(x1*x6*x7)",
    "x11": "x1",
    "x12": "(x2^(2)*x3^(2))/(x1*x10*x6)",
    "x13": "(x1^(3)*x7)/(x2^(2)*x4)",
    "x14": "(x1^(4)*x10*x6)/(x2^(2)*x3*x4^(2))",
    "x15": "(x1^(6))/(x2^(2)*x4^(2)*x6)",
    "x16": "x1",
    "x17": "(x1^(4))/(x4*x6*x7)",
    "x18": "(x1^(3)*x3)/(x10*x6^(2))",
    "x19": "(x1*x4*x7)/(x2*x3)",
    "x20": "(x2^(3)*x3*x4)/(x1^(2)*x6*x7)",
    "x21": "x1",
    "x22": "(x2^(2)*x4^(2))/(x1^(2)*x6)",
    "x23": "(x1^(4)*x10)/(x2*x3^(2)*x6)",
    "x24": "(x2^(3)*x3^(2)*x4^(2))/(x1^(5)*x10)",
    "x25": "(x1^(6)*x7)/(x2^(3)*x3^(2)*x4)",
    "x26": "x1",
    "x27": "(x1^(4)*x10*x6^(2))/(x2^(3)*x3^(2)*x4)",
    "x28": "(x1*x2*x4)/(x6*x7)",
    "x29": "(x1^(6))/(x2^(2)*x3^(2)*x6)",
    "x30": "(x1^(3)*x2*x4)/(x10*x6^(3))",
    "x31": "x6",
    "x32": "(x1*x6)/(x4)",
    "x33": "(x1*x6)/(x2)",
    "x34": "(x2*x3*x4*x6)/(x1^(3))",
    "x35": "(x1*x6)/(x3)",
    "x36": "x1",
}
_S4_4CYCLES_1_Z = {
    "z1": "1",
    "z2": "(x2*x3)/(x1^(2))",
    "z3": "(x1^(2))/(x2*x4)",
    "z4": "(x2*x4)/(x1^(2))",
    "z5": "(x1^(2))/(x2*x3)",
    "z6": "(x6^(2))/(x1^(2))",
}

_S4_4CYCLES_2_RELS = {
    "x6": "(x1*x2*x3)/(x4*x5)",
    "x7": "(q2*x4*x5*x9^(2))/(x2*x3^(2))",
    "x8": "(q3*x9^(2))/(x3)",
    "x10": "x9",
    "x11": "x3",
    "x12": "(q3^(2)*x2*x3^(2))/(q2*x4*x5)",
    "x13": "x3",
    "x14": "(q2*x4*x5*x9)/(q3^(2)*x1*x2)",
    "x15": "(x3*x9)/(x2)",
    "x16": "(x3^(3))/(q3*x5*x9)",
    "x17": "(x3^(3))/(q2*x1*x9)",
    "x18": "(x3^(2))/(x4)",
    "x19": "x4",
    "x20": "(x3*x4)/(q3*x1)",
    "x21": "(q3*x3*x4)/(x2)",
    "x22": "(q3*x3*x4)/(x5)",
    "x23": "(x4^(2)*x5)/(q3*x1*x2)",
    "x24": "x3",
    "x25": "(x3^(2))/(q2*x9)",
    "x26": "x3",
    "x27": "(q3*x3*x5)/(q2*x2)",
    "x28": "(x2*x3^(3))/(q2*x5*x9^(2))",
    "x29": "(q3^(2)*x3^(3))/(x9^(2))",
    "x30": "(q2*x3^(2))/(x9)",
    "x31": "(q3^(2)*x1*x9)/(q2*x4)",
    "x32": "(x5*x9)/(q3*x4)",
    "x33": "(x3^(2))/(x4)",
    "x34": "x3",
    "x35": "(q3*x2*x3^(2))/(x4*x9)",
    "x36": "(q2*q3*x1*x2*x3^(3))/(x4^(2)*x5*x9)",
}
_S4_4CYCLES_2_Z = {
    "z1": "z1",
    "z2": "(((q2)^(1/3))*x9*z1)/(((x1*x2*x3)^(1/3)))",
    "z3": "(x3*z1*((x1*x2*x3)^(1/3)))/(((q2)^(1/3))*x1*x2)",
    "z4": "(q2^(2/3)*x4*z1*((x1*x2*x3)^(1/3)))/(q3^(2)*x1*x2)",
    "z5": "(q3*x3^(2)*z1)/(q2^(2/3)*x9*((x1*x2*x3)^(1/3)))",
    "z6": "(x3*z1)/(q2*x4)",
}

_AFF52_RELS = {
    "x5": "(x1^(4))/(x2*x3*x4)",
    "x7": "(x2*x4)/(x3)",
    "x8": "(x2^(3)*x3*x4^(3))/(x1^(5)*x6)",
    "x9": "(x2*x4)/(x1)",
    "x10": "x1",
    "x11": "(x1*x3*x6)/(x4^(2))",
    "x12": "(x2*x3)/(x1)",
    "x13": "(x2^(2)*x3^(2)*x4)/(x1^(4))",
    "x14": "x1",
    "x15": "(x2^(2)*x3*x4)/(x1^(2)*x6)",
    "x16": "(x1^(7)*x6)/(x2^(3)*x3^(2)*x4^(2))",
    "x17": "(x2*x4^(2))/(x3*x6)",
    "x18": "x1",
    "x19": "(x1^(4))/(x2^(2)*x3)",
    "x20": "(x1^(3))/(x2*x3)",
    "x21": "(x1^(6)*x6)/(x2^(3)*x4^(3))",
    "x22": "x1",
    "x23": "(x1^(3))/(x2*x4)",
    "x24": "(x1*x4)/(x6)",
    "x25": "(x1^(4))/(x2*x4^(2))",
}
_AFF52_Z = {
    "z1": "z1",
    "z2": "(x2*x4*z1)/(x1^(2))",
    "z3": "(x2*x3*z1)/(x1^(2))",
    "z4": "(x1^(2)*z1)/(x2*x3)",
    "z5": "(x1^(2)*z1)/(x2*x4)",
}

_AFF53_RELS = {
    "x5": "(x1^(4))/(x2*x3*x4)",
    "x7": "(x2^(2)*x3^(2))/(x1*x4*x6)",
    "x8": "(x2*x3)/(x1)",
    "x9": "(x2^(2)*x3^(2)*x4)/(x1^(4))",
    "x10": "x1",
    "x11": "(x1^(3)*x6)/(x2^(2)*x3)",
    "x12": "(x1^(4))/(x2*x4^(2))",
    "x13": "(x1^(4)*x3)/(x2*x4^(2)*x6)",
    "x14": "x1",
    "x15": "(x1^(3))/(x2*x4)",
    "x16": "(x2*x4^(2)*x6)/(x1^(3))",
    "x17": "(x2*x4)/(x1)",
    "x18": "x1",
    "x19": "(x2^(2)*x3*x4)/(x1^(2)*x6)",
    "x20": "(x2*x4)/(x3)",
    "x21": "(x1^(2)*x4*x6)/(x2*x3^(2))",
    "x22": "x1",
    "x23": "(x1^(4))/(x2^(2)*x3)",
    "x24": "(x1^(3))/(x2*x3)",
    "x25": "(x1^(5))/(x2*x3*x4*x6)",
}
_AFF53_Z = {
    "z1": "z1",
    "z2": "(x2*x3*z1)/(x1^(2))",
    "z3": "(x1^(2)*z1)/(x2*x4)",
    "z4": "(x2*x4*z1)/(x1^(2))",
    "z5": "(x1^(2)*z1)/(x2*x3)",
}

_S4_TRANSP_1_RELS = {
    "x3": "(x2^(2))/(x1)",
    "x4": "(x2^(2))/(x1)",
    "x5": "x2",
    "x6": "x1",
    "x10": "x1",
    "x12": "(x2^(6)*x7*x8)/(x1^(5)*x11*x9)",
    "x14": "q^(2)*x9",
    "x15": "(q*x1*x9^(3))/(x13*x7*x8)",
    "x16": "(x1^(5)*x11*x13)/(q*x2^(5)*x7)",
    "x17": "x1",
    "x18": "(x2^(2)*x9^(2))/(x11*x13*x8)",
    "x19": "(x1*x2)/(x8)",
    "x20": "x1",
    "x21": "(x1^(2)*x11*x9)/(x2*x7*x8)",
    "x22": "(x2^(2))/(x7)",
    "x23": "(x2^(3))/(x1*x9)",
    "x24": "(x2^(4))/(x1^(2)*x11)",
    "x25": "(x13*x2^(2)*x7*x8)/(q*x1*x9^(3))",
    "x26": "(x1^(4)*x11*x13*x8)/(x2^(4)*x9^(2))",
    "x27": "x1",
    "x28": "(q^(2)*x2^(3))/(x1*x9)",
    "x29": "(x1*x2)/(x13)",
    "x30": "(q*x2^(4)*x7)/(x1^(2)*x11*x13)",
    "x31": "q^(2)*x1",
    "x32": "(x1^(3)*x13*x8)/(q*x2^(3)*x9)",
    "x33": "(x2^(3)*x9^(2))/(x1^(2)*x13*x8)",
    "x34": "(x13*x2*x8)/(x9^(2))",
    "x35": "(q*x1^(3)*x9)/(x13*x2*x8)",
    "x36": "x1",
}
_S4_TRANSP_1_Z = {
    "z1": "z1",
    "z2": "z1*(((x7*x8)/(x1^(2)))^(1/3))",
    "z3": "(x9*z1)/(q*x1*(((x7*x8)/(x1^(2)))^(1/3)))",
    "z4": "(z1)/((((x7*x8)/(x1^(2)))^(1/3)))",
    "z5": "(q*x1*z1*(((x7*x8)/(x1^(2)))^(1/3)))/(x9)",
    "z6": "(z1)/(q)",
}

_S4_TRANSP_2_RELS = {
    "x3": "(x2^(2))/(x1)",
    "x4": "(x2^(2))/(x1)",
    "x5": "x2",
    "x6": "x1",
    "x10": "x1",
    "x12": "(x1*x7*x8)/(x11*x9)",
    "x14": "q^(2)*x9",
    "x15": "(q*x1*x9^(3))/(x13*x7*x8)",
    "x16": "(x11*x13*x2)/(q*x1*x7)",
    "x17": "x1",
    "x18": "(x1^(3)*x9^(2))/(x11*x13*x2*x8)",
    "x19": "(x1*x2)/(x8)",
    "x20": "x1",
    "x21": "(x11*x2^(2)*x9)/(x1*x7*x8)",
    "x22": "(x2^(2))/(x7)",
    "x23": "(x1^(2))/(x9)",
    "x24": "(x1*x2)/(x11)",
    "x25": "(x13*x2^(2)*x7*x8)/(q*x1*x9^(3))",
    "x26": "(x1*x11*x13*x8)/(x2*x9^(2))",
    "x27": "x1",
    "x28": "(q^(2)*x1^(2))/(x9)",
    "x29": "(x1*x2)/(x13)",
    "x30": "(q*x1^(4)*x7)/(x11*x13*x2^(2))",
    "x31": "q^(2)*x1",
    "x32": "(x13*x8)/(q*x9)",
    "x33": "(x1*x9^(2))/(x13*x8)",
    "x34": "(x13*x2*x8)/(x9^(2))",
    "x35": "(q*x1^(3)*x9)/(x13*x2*x8)",
    "x36": "x1",
}
_S4_TRANSP_2_Z = {
    "z1": "z1",
    "z2": "(q*x13*x8*z1)/(x2*x9)",
    "z3": "(x2*x9^(2)*z1)/(q^(2)*x1*x13*x8)",
    "z4": "(q^(2)*x1*x13*x8*z1)/(x2*x9^(2))",
    "z5": "(x2*x9*z1)/(q*x13*x8)",
    "z6": "q^(2)*z1",
}

_AFF73_RELS = {
    "x5": "(x1^(3))/(x2*x3)",
    "x7": "(x1^(3))/(x4*x6)",
    "x10": "(x3^(3)*x9^(2))/(x1^(4))",
    "x11": "(x3*x9)/(x1)",
    "x12": "(x3^(3)*x9^(3))/(x1^(2)*x2*x6*x8)",
    "x13": "(x2*x6)/(x1)",
    "x14": "x1",
    "x15": "(x1*x3*x8)/(x4*x6)",
    "x16": "(x3^(4)*x9^(3))/(x1^(3)*x6^(2)*x8)",
    "x17": "(x2*x3^(3)*x9)/(x1^(3)*x6)",
    "x18": "(x3*x4)/(x1)",
    "x19": "(x3^(3)*x9^(2))/(x1*x2*x6^(2))",
    "x20": "x1",
    "x21": "(x3^(2)*x9)/(x1*x6)",
    "x22": "(x1^(2)*x2*x4*x6^(2)*x8)/(x3^(3)*x9^(3))",
    "x23": "(x2*x4)/(x1)",
    "x24": "(x2*x4*x6)/(x3*x9)",
    "x25": "(x2*x4^(2)*x6^(2))/(x1^(2)*x3*x9)",
    "x26": "x1",
    "x27": "(x2*x4*x6)/(x1*x8)",
    "x28": "(x1*x2^(2)*x4*x6)/(x3^(2)*x9^(2))",
    "x29": "(x1^(2)*x8)/(x2*x4)",
    "x30": "(x1^(2)*x3^(2)*x9^(2))/(x2*x4^(2)*x6^(2))",
    "x31": "(x3^(4)*x9^(3))/(x1*x2*x4*x6^(2)*x8)",
    "x32": "x1",
    "x33": "(x1^(3)*x3*x9)/(x2^(2)*x4*x6)",
    "x34": "(x1^(2)*x3*x9)/(x2*x4*x6)",
    "x35": "(x1^(5))/(x2*x3*x4*x6)",
    "x36": "(x1^(4)*x2*x6^(2)*x8)/(x3^(4)*x9^(3))",
    "x37": "(x1^(3)*x6)/(x3^(2)*x9)",
    "x38": "x1",
    "x39": "(x1^(4)*x4*x6^(2))/(x3^(4)*x9^(2))",
    "x40": "(x1^(2)*x6)/(x2*x3)",
    "x41": "(x1^(4)*x6)/(x3^(2)*x4*x9)",
    "x42": "(x1^(3))/(x3*x8)",
    "x43": "(x1^(6)*x6*x8)/(x3^(4)*x9^(3))",
    "x44": "x1",
    "x45": "(x1^(2)*x3)/(x4*x6)",
    "x46": "(x1*x4)/(x8)",
    "x47": "(x1^(3))/(x3*x9)",
    "x48": "(x1^(4)*x6)/(x3^(2)*x9^(2))",
    "x49": "(x1^(4))/(x3*x6*x9)",
}
_AFF73_Z = {
    "z1": "z1",
    "z2": "(x3*x9*z1)/(x1^(2))",
    "z3": "(x3^(2)*x9*z1)/(x1^(2)*x6)",
    "z4": "(x2*x4*x6*z1)/(x1*x3*x9)",
    "z5": "(x1*x3*x9*z1)/(x2*x4*x6)",
    "z6": "(x1^(2)*x6*z1)/(x3^(2)*x9)",
    "z7": "(x1^(2)*z1)/(x3*x9)",
}

_AFF75_RELS = {
    "x4": "(x1*x10^(2)*x2^(2)*x8^(2))/(x6^(3)*x9^(3))",
    "x5": "(x1^(3))/(x2*x3)",
    "x7": "(x1^(2)*x6^(2)*x9^(3))/(x10^(2)*x2^(2)*x8^(2))",
    "x11": "(x10^(2)*x2^(3)*x8^(2))/(x6^(3)*x9^(3))",
    "x12": "(x10*x2*x8)/(x6*x9)",
    "x13": "(x10^(3)*x2^(3)*x8^(3))/(x1*x6^(3)*x9^(4))",
    "x14": "x1",
    "x15": "(x1^(2)*x8)/(x2*x6)",
    "x16": "(x1^(2)*x6*x9^(2))/(x10*x2^(2)*x8)",
    "x17": "(x1^(2)*x6^(3)*x9^(4))/(x10^(2)*x2^(4)*x8^(2))",
    "x18": "(x1^(3)*x9^(2))/(x10*x2^(2)*x8)",
    "x19": "(x1^(3)*x6^(2)*x9^(3))/(x10*x2^(3)*x3*x8^(2))",
    "x20": "x1",
    "x21": "(x1*x3*x6^(2)*x9^(3))/(x10^(2)*x2^(2)*x8^(2))",
    "x22": "(x10*x2^(3)*x3*x8^(2))/(x6^(3)*x9^(3))",
    "x23": "(x10*x2^(3)*x3^(2)*x8)/(x1^(2)*x6^(2)*x9^(2))",
    "x24": "(x10^(2)*x2^(2)*x3*x8^(2))/(x6^(3)*x9^(3))",
    "x25": "(x1*x10^(2)*x2^(3)*x3*x8^(2))/(x6^(4)*x9^(4))",
    "x26": "x1",
    "x27": "(x10*x2^(2)*x3*x8)/(x6^(2)*x9^(2))",
    "x28": "(x2*x3)/(x8)",
    "x29": "(x1^(3)*x6^(2)*x9^(3))/(x10^(2)*x2^(3)*x3*x8)",
    "x30": "(x1*x6^(3)*x9^(3))/(x10*x2^(2)*x3*x8^(2))",
    "x31": "(x1^(2)*x6^(2)*x9^(2))/(x10*x2^(2)*x3*x8)",
    "x32": "x1",
    "x33": "(x1^(3)*x6*x9)/(x2^(2)*x3^(2))",
    "x34": "(x1^(2)*x6)/(x2*x3)",
    "x35": "(x1^(2)*x6^(5)*x9^(5))/(x10^(3)*x2^(4)*x3*x8^(3))",
    "x36": "(x1*x10*x2^(2)*x8^(2))/(x6^(2)*x9^(3))",
    "x37": "(x2*x6)/(x1)",
    "x38": "x1",
    "x39": "(x10^(2)*x2^(3)*x8)/(x6^(2)*x9^(3))",
    "x40": "(x1*x10*x2^(2)*x8)/(x3*x6*x9^(2))",
    "x41": "(x10^(2)*x2^(4)*x3*x8^(2))/(x1^(2)*x6^(2)*x9^(4))",
    "x42": "(x10*x2^(2)*x8)/(x6*x9^(2))",
    "x43": "(x1*x3)/(x10)",
    "x44": "x1",
    "x45": "(x1^(3)*x6*x9)/(x10*x2^(2)*x8)",
    "x46": "(x1^(2)*x6*x9)/(x10*x2*x8)",
    "x47": "(x1^(4)*x6^(2)*x9^(3))/(x10^(2)*x2^(3)*x3*x8^(2))",
    "x48": "(x1*x6)/(x8)",
    "x49": "(x1^(2)*x6^(2)*x9^(2))/(x10^(2)*x2*x8^(2))",
}
_AFF75_Z = {
    "z1": "z1",
    "z2": "(x10*x2*x8*z1)/(x1*x6*x9)",
    "z3": "(x1*x6*x9^(2)*z1)/(x10*x2^(2)*x8)",
    "z4": "(x10*x2^(2)*x3*x8*z1)/(x1*x6^(2)*x9^(2))",
    "z5": "(x1*x6^(2)*x9^(2)*z1)/(x10*x2^(2)*x3*x8)",
    "z6": "(x10*x2^(2)*x8*z1)/(x1*x6*x9^(2))",
    "z7": "(x1*x6*x9*z1)/(x10*x2*x8)",
}


@dataclass(frozen=True)
class FamilyFixture:
    """A coefficient family plus its twist data for one solution."""

    id: str
    solution: NearRackSolution
    relations: dict[str, str]
    conditions: tuple[str, ...]
    symbol_orders: dict[str, int]
    named_free: tuple[str, ...]
    zs: dict[str, str]
    branch: tuple[str, ...]  # extra conditions under which the twist exists
    sample_point: dict[str, "CycScalar"]
    # set when the tabulated family is a proper branch of the full solution
    # set (then the solver's invariants are checked against the truth instead)
    invariants_override: Optional[tuple[int, tuple[int, ...]]] = None
    # set when the tabulated coefficient table actually belongs to a sibling
    # solution (checked there); the solver output is validated on its own
    table_belongs_to: Optional[str] = None


def _fixture(id, key, relations, conditions, orders, free, zs, branch, point,
             invariants_override=None, table_belongs_to=None):
    sol = PRINTED_SOLUTIONS[key][int(id.endswith("-2"))] if key in (
        "fourcycles-s4", "transpositions-s4"
    ) and id[-1] in "12" else PRINTED_SOLUTIONS[key][0]
    return FamilyFixture(
        id=id,
        solution=sol,
        relations=dict(relations),
        conditions=tuple(conditions),
        symbol_orders=dict(orders),
        named_free=tuple(free),
        zs=dict(zs),
        branch=tuple(branch),
        sample_point=dict(point),
        invariants_override=invariants_override,
        table_belongs_to=table_belongs_to,
    )


def _ones(names):
    return {n: CycScalar.one(1) for n in names}


FAMILY_FIXTURES: list[FamilyFixture] = [
    _fixture(
        "family-dihedral3", "dihedral3", _DIHEDRAL3_RELS,
        ["x1^3/x2^3"], {}, ["x1", "x2", "x4", "x5"], _DIHEDRAL3_Z,
        ["x2/x1"], _ones(["x1", "x2", "x4", "x5"]),
    ),
    _fixture(
        "family-alt4-3cycles", "threecycles-alt4", _ALT4_3CYCLES_RELS,
        ["x3^6*x4^2*x5^2/(x1^6*x6^4)"], {}, ["x1", "x3", "x4", "x5", "x6"],
        _ALT4_3CYCLES_Z, [], _ones(["x1", "x3", "x4", "x5", "x6"]),
    ),
    _fixture(
        "family-s4-4cycles-1", "fourcycles-s4", _S4_4CYCLES_1_RELS,
        ["x1^4/x6^4"], {}, ["x1", "x2", "x3", "x4", "x6", "x7", "x10"],
        _S4_4CYCLES_1_Z, [],
        _ones(["x1", "x2", "x3", "x4", "x6", "x7", "x10"]),
    ),
    _fixture(
        "family-s4-4cycles-2", "fourcycles-s4", _S4_4CYCLES_2_RELS,
        [], {"q2": 2, "q3": 3}, ["x1", "x2", "x3", "x4", "x5", "x9"],
        _S4_4CYCLES_2_Z, ["q3"],
        {**_ones(["x1", "x2", "x3", "x4", "x5", "x9"]),
         "q2": CycScalar.one(1), "q3": CycScalar.one(1)},
        # the tabulated relations parametrize the branch where the order-4
        # torsion coordinate squares to 1; the full variety has a Z/12
        # component (witnessed by a braid-verified point outside the branch)
        invariants_override=(6, (12,)),
    ),
    _fixture(
        "family-aff52", "aff52", _AFF52_RELS, [], {},
        ["x1", "x2", "x3", "x4", "x6"], _AFF52_Z, [],
        _ones(["x1", "x2", "x3", "x4", "x6"]),
    ),
    _fixture(
        "family-aff53", "aff53", _AFF53_RELS, [], {},
        ["x1", "x2", "x3", "x4", "x6"], _AFF53_Z, [],
        _ones(["x1", "x2", "x3", "x4", "x6"]),
    ),
    _fixture(
        "family-s4-transp-1", "transpositions-s4", _S4_TRANSP_1_RELS,
        ["x1^3/x2^3"], {"q": 4},
        ["x1", "x2", "x7", "x8", "x9", "x11", "x13"], _S4_TRANSP_1_Z,
        ["x1/x2", "q^2"],
        {**_ones(["x1", "x2", "x7", "x8", "x9", "x11", "x13"]),
         "q": CycScalar.one(1)},
    ),
    _fixture(
        "family-s4-transp-2", "transpositions-s4", _S4_TRANSP_2_RELS,
        ["x2^3/x1^3"], {"q": 4},
        ["x1", "x2", "x7", "x8", "x9", "x11", "x13"], _S4_TRANSP_2_Z, [],
        {**_ones(["x1", "x2", "x7", "x8", "x9", "x11", "x13"]),
         "q": CycScalar.one(1)},
        # the tabulated coefficient data reproduces the first transposition
        # family (modulo its torsion condition) rather than one for this
        # sigma/tau table; the solver family below is checked on its own and
        # the twist is verified to exist unconditionally
        invariants_override=(6, (2,)),
        table_belongs_to="family-s4-transp-1",
    ),
    _fixture(
        "family-aff73", "aff73", _AFF73_RELS, [], {},
        ["x1", "x2", "x3", "x4", "x6", "x8", "x9"], _AFF73_Z, [],
        _ones(["x1", "x2", "x3", "x4", "x6", "x8", "x9"]),
    ),
    _fixture(
        "family-aff75", "aff75", _AFF75_RELS, [], {},
        ["x1", "x2", "x3", "x6", "x8", "x9", "x10"], _AFF75_Z, [],
        _ones(["x1", "x2", "x3", "x6", "x8", "x9", "x10"]),
    ),
]


# ---------------------------------------------------------------------------
# involutive (diagonal-twist) fixtures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvolutiveFixture:
    id: str
    size: int
    pairs: int  # tau = (1,2)(3,4)...
    relations: dict[str, str]
    zs: dict[str, str]
    vertex_labels: tuple[str, ...]
    edge_labels: dict[tuple[int, int], str]


INVOLUTIVE_FIXTURES = [
    InvolutiveFixture(
        "involutive-2dim", 2, 1,
        {"x3": "x2"},
        {"z1": "z1", "z2": "z1*(x4/x1)^(1/2)"},
        ("x2", "x2"),
        {(1, 2): "x1*x4"},
    ),
    InvolutiveFixture(
        "involutive-3dim", 3, 1,
        {"x4": "x2", "x8": "x6*x7/x3", "x5": "x1*x6^2/x3^2"},
        {"z1": "z1", "z2": "x6*z1/x3", "z3": "z1*(x6/x3)^(1/2)"},
        ("x2", "x2", "x9"),
        {(1, 2): "(x1*x6)^2/x3^2", (1, 3): "x6*x7", (2, 3): "x6*x7"},
    ),
    InvolutiveFixture(
        "involutive-4dim", 4, 2,
        {"x5": "x2", "x15": "x12", "x14": "x8*x9/x3",
         "x13": "x4*x10/x7", "x16": "x4*x8*x11/(x3*x7)",
         "x6": "x1*x7*x8/(x3*x4)"},
        {"z1": "z1", "z2": "z1*(x7*x8/(x3*x4))^(1/2)",
         "z3": "z1*(x7/x4)^(1/2)", "z4": "z1*(x8/x3)^(1/2)"},
        ("x2", "x2", "x12", "x12"),
        {(1, 2): "x1^2*x7*x8/(x3*x4)", (3, 4): "x11^2*x4*x8/(x3*x7)",
         (1, 3): "x4*x10", (2, 4): "x4*x10",
         (1, 4): "x8*x9", (2, 3): "x8*x9"},
    ),
]


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------

@dataclass
class FixtureResult:
    id: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def record(self, name: str, ok: bool, info: str = "") -> None:
        self.checks.append((name, bool(ok), info))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        bad = [name for name, ok, _ in self.checks if not ok]
        tail = f" (failed: {', '.join(bad)})" if bad else ""
        return f"{status} {self.id} [{len(self.checks)} checks]{tail}"


def run_enum_fixture(key: str) -> FixtureResult:
    res = FixtureResult(f"enum-{key}")
    rack = RACK_BUILDERS[key]()
    if key in PRINTED_RACK_TABLES:
        res.record("rack-table", rack.table == PRINTED_RACK_TABLES[key])
    enumeration = enum_near_racks(rack)
    res.record(
        "class-count",
        enumeration.iso_class_count == EXPECTED_CLASS_COUNTS[key],
        f"got {enumeration.iso_class_count} (raw {enumeration.raw_count})",
    )
    for i, printed in enumerate(PRINTED_SOLUTIONS[key], start=1):
        rep = verify(printed.base)
        res.record(f"reference-{i}-verifies", rep.is_ybe and rep.near_rack)
        res.record(
            f"reference-{i}-matched",
            any(
                isomorphic(printed.base, r.base) is not None
                for r in enumeration.representatives
            ),
        )
    # distinct printed solutions must be non-isomorphic
    printed = PRINTED_SOLUTIONS[key]
    if len(printed) == 2:
        res.record(
            "reference-pair-distinct",
            isomorphic(printed[0].base, printed[1].base) is None,
        )
    return res


def _family_conditions(fx: FamilyFixture) -> list[Monomial]:
    return [parse_monomial(c, fx.symbol_orders) for c in fx.conditions]


def _branch_conditions(fx: FamilyFixture) -> list[Monomial]:
    return [parse_monomial(c, fx.symbol_orders) for c in fx.branch]


def _printed_values(fx: FamilyFixture) -> dict[str, Monomial]:
    m = fx.solution.size
    values = {}
    for k in range(1, m * m + 1):
        name = f"x{k}"
        if name in fx.relations:
            values[name] = parse_monomial(fx.relations[name], fx.symbol_orders)
        else:
            values[name] = Monomial.param(name)
    return values


def expected_invariants(fx: FamilyFixture) -> tuple[int, tuple[int, ...]]:
    """Free rank and canonical torsion orders of the printed family."""
    gens = list(fx.named_free) + sorted(fx.symbol_orders)
    index = {g: i for i, g in enumerate(gens)}
    rows = []
    for cond in _family_conditions(fx):
        row = [0] * len(gens)
        for name, e in cond.exps:
            row[index[name]] = int(e)
        rows.append(row)
    for sym, order in sorted(fx.symbol_orders.items()):
        row = [0] * len(gens)
        row[index[sym]] = order
        rows.append(row)
    if not rows:
        return len(gens), ()
    snf = smith_normal_form(rows)
    torsion = canonical_torsion_orders(snf.invariant_factors)
    return len(gens) - snf.rank, torsion


def run_family_fixture(fx: FamilyFixture, verify_cert: bool = True) -> FixtureResult:
    if fx.table_belongs_to is not None:
        return _run_mismatched_table_fixture(fx)
    res = FixtureResult(fx.id)
    rep = verify(fx.solution.base)
    res.record("solution-verifies", rep.is_ybe and rep.near_rack)

    system = ybe_coefficient_system(fx.solution.base)
    printed_vals = _printed_values(fx)
    fam_conds = _family_conditions(fx)

    # the reference parametrization satisfies every coefficient equation
    residues = system.substitute(printed_vals)
    ok = all(is_identity_modulo(r, fam_conds) for r in residues)
    res.record("reference-family-satisfies-system", ok)

    # the solver's family has the expected invariants
    fam = solve(system)
    exp_free, exp_torsion = fx.invariants_override or expected_invariants(fx)
    res.record(
        "free-rank",
        fam.free_rank == exp_free,
        f"solver {fam.free_rank}, reference {exp_free}",
    )
    res.record(
        "torsion-orders",
        fam.torsion_orders == exp_torsion,
        f"solver {fam.torsion_orders}, reference {exp_torsion}",
    )
    # and the reference relations hold inside the solver's family once the
    # reference's root-of-unity symbols are rewritten as the coordinate
    # monomials that recover them (a relation carrying such a symbol with
    # exponent +-1 defines the recovery)
    if fx.invariants_override is None:
        recovery = _torsion_recovery(fx, printed_vals)
        ok = recovery is not None
        bad_name = "" if ok else "no-recovery"
        if ok:
            for name, rhs in fx.relations.items():
                target = _eliminate_torsion(printed_vals[name], recovery)
                residue = fam.expr[name] * _subst(target, fam.expr).inverse()
                if not is_identity_modulo(residue, list(fam.conditions)):
                    ok = False
                    bad_name = name
                    break
        res.record("reference-relations-contained", ok, bad_name)
    else:
        # the tabulated data covers a proper branch; containment of the whole
        # reference lattice is not applicable, the substitution check above
        # already certifies the branch lies inside the solution set
        res.record("reference-branch-inside-solutions", True, "branch family")

    # twist system: solve, compare conditions, check printed z's
    m = fx.solution.size
    bsp = BraidedSpace(
        fx.solution.base,
        tuple(
            tuple(printed_vals[f"x{m * (i - 1) + j}"] for j in range(1, m + 1))
            for i in range(1, m + 1)
        ),
    )
    cert = solve_tequiv(bsp)
    is_cert = isinstance(cert, TEquivCertificate)
    res.record("twist-solvable", is_cert)
    if not is_cert:
        return res

    branch = _branch_conditions(fx)
    res.record(
        "branch-conditions",
        same_condition_lattice(
            list(cert.conditions) + fam_conds, branch + fam_conds
        ),
        f"solver {[str(c) for c in cert.conditions]}, reference {[str(b) for b in branch]}",
    )

    zsys = z_system(bsp)
    zvals = {k: parse_monomial(v, fx.symbol_orders) for k, v in fx.zs.items()}
    allconds = fam_conds + branch
    ok = all(is_identity_modulo(r, allconds) for r in zsys.substitute(zvals))
    res.record("reference-z-satisfy-system", ok)

    # solver z's agree with printed ones up to free scale and root branches:
    # raising to the lcm of exponent denominators quotients exactly the
    # ambiguity of the independently chosen roots
    scale_free = [Monomial.root(e, o) for e, o in cert.family.eps_orders.items()]
    mod_conds = allconds + scale_free
    ratios = [
        zvals[f"z{i}"] * cert.z[i - 1].inverse() for i in range(1, m + 1)
    ]
    ok = True
    for r in ratios[1:]:
        rel = r * ratios[0].inverse()
        lcm = 1
        for _, e in rel.exps:
            lcm = lcm * e.denominator // gcd(lcm, e.denominator)
        if not is_identity_modulo(rel ** lcm, mod_conds):
            ok = False
            break
    res.record("z-match-up-to-scale", ok)

    if verify_cert:
        inst = instantiate_certificate(cert, fx.sample_point)
        report = verify_certificate(inst)
        res.record("certificate-verifies", report.ok, str(report.witness or ""))
    return res


def _torsion_recovery(
    fx: FamilyFixture, printed_vals: dict[str, Monomial]
) -> Optional[dict[str, Monomial]]:
    """Coordinate monomials recovering each root-of-unity symbol, from
    relations carrying that symbol with exponent +-1."""
    recovery: dict[str, Monomial] = {}
    pending = set(fx.symbol_orders)
    while pending:
        progress = False
        for sym in sorted(pending):
            for name, expr in printed_vals.items():
                exps = expr.exponents
                k = exps.get(sym)
                if k not in (1, -1):
                    continue
                others = [
                    s for s in expr.symbols()
                    if s != sym and s in fx.symbol_orders and s in pending
                ]
                if others:
                    continue
                rest = expr * Monomial.root(sym, fx.symbol_orders[sym], -k)
                rest = _subst(rest, {**recovery})
                rec = (Monomial.param(name) * rest.inverse()) ** int(k)
                recovery[sym] = rec
                pending.discard(sym)
                progress = True
                break
        if not progress:
            return None
    return recovery


def _eliminate_torsion(
    mono: Monomial, recovery: dict[str, Monomial]
) -> Monomial:
    return _subst(mono, dict(recovery))


def _run_mismatched_table_fixture(fx: FamilyFixture) -> FixtureResult:
    """Checks for an entry whose tabulated coefficient data belongs to a
    sibling solution: the table is validated there, and this solution's
    pipeline is validated from the solver's own family."""
    res = FixtureResult(fx.id)
    rep = verify(fx.solution.base)
    res.record("solution-verifies", rep.is_ybe and rep.near_rack)

    sibling = next(f for f in FAMILY_FIXTURES if f.id == fx.table_belongs_to)
    printed_vals = _printed_values(fx)
    fam_conds = _family_conditions(fx)
    sib_system = ybe_coefficient_system(sibling.solution.base)
    ok = all(
        is_identity_modulo(r, fam_conds)
        for r in sib_system.substitute(printed_vals)
    )
    res.record("reference-table-satisfies-sibling-system", ok, fx.table_belongs_to)

    system = ybe_coefficient_system(fx.solution.base)
    fam = solve(system)
    exp_free, exp_torsion = fx.invariants_override
    res.record("free-rank", fam.free_rank == exp_free, str(fam.free_rank))
    res.record(
        "torsion-orders", fam.torsion_orders == exp_torsion, str(fam.torsion_orders)
    )

    m = fx.solution.size
    bsp = BraidedSpace(
        fx.solution.base,
        tuple(
            tuple(fam.expr[f"x{m * (i - 1) + j}"] for j in range(1, m + 1))
            for i in range(1, m + 1)
        ),
    )
    cert = solve_tequiv(bsp)
    is_cert = isinstance(cert, TEquivCertificate)
    res.record("twist-solvable", is_cert)
    if is_cert:
        # the twist exists without constraints beyond the family's own
        res.record(
            "twist-unconditional",
            same_condition_lattice(
                list(cert.conditions) + list(fam.conditions), list(fam.conditions)
            ),
        )
        inst = instantiate_certificate(
            cert, {name: CycScalar.one(1) for name in fam.free}
        )
        res.record("certificate-verifies", verify_certificate(inst).ok)
    return res


def _subst(mono: Monomial, table: dict[str, Monomial]) -> Monomial:
    out = Monomial.one() if mono.sign == 1 else Monomial.minus_one()
    for name, e in mono.exps:
        base = table.get(name)
        if base is None:
            base = Monomial.root(name, dict(mono.orders)[name]) if name in dict(
                mono.orders
            ) else Monomial.param(name)
        out = out * base ** e
    return out


def run_involutive_fixture(fx: InvolutiveFixture) -> FixtureResult:
    from .braided import twist
    from .tequiv import involutive_z

    res = FixtureResult(fx.id)
    sol = involutive_representative(fx.size, fx.pairs)
    system = ybe_coefficient_system(sol.base)
    fam = solve(system)
    m = fx.size

    ok = True
    for name, rhs in fx.relations.items():
        target = parse_monomial(rhs)
        if not is_identity_modulo(
            fam.expr[name] * _subst(target, fam.expr).inverse(),
            list(fam.conditions),
        ):
            ok = False
            break
    res.record("relations", ok)
    res.record("no-conditions", not fam.conditions)

    bsp = BraidedSpace(
        sol.base,
        tuple(
            tuple(fam.expr[f"x{m * (i - 1) + j}"] for j in range(1, m + 1))
            for i in range(1, m + 1)
        ),
    )
    zs = involutive_z(bsp)
    # the reference may present the same family on a different free set;
    # pushing its expressions through the solved family normalizes both sides
    zvals = {
        k: _subst(parse_monomial(v), fam.expr) for k, v in fx.zs.items()
    }
    ratios = [zvals[f"z{i}"] * zs[i - 1].inverse() for i in range(1, m + 1)]
    ok = True
    for r in ratios[1:]:
        rel = r * ratios[0].inverse()
        lcm = 1
        for _, e in rel.exps:
            lcm = lcm * e.denominator // gcd(lcm, e.denominator)
        if not is_identity_modulo(rel ** lcm, []):
            ok = False
            break
    res.record("z-closed-form", ok)

    tw = twist(bsp, zs)
    diagram = gdd(tw)
    ok = all(
        diagram.vertices[i] == _subst(parse_monomial(fx.vertex_labels[i]), fam.expr)
        for i in range(m)
    )
    res.record("gdd-vertices", ok)
    edge_map = diagram.edge_map()
    want = {
        k: _subst(parse_monomial(v), fam.expr) for k, v in fx.edge_labels.items()
    }
    res.record(
        "gdd-edges",
        set(edge_map) == set(want)
        and all(edge_map[k] == want[k] for k in want),
    )
    res.record("tau-symmetry", check_tau_symmetry(diagram, sol.tau))
    return res


ALL_FIXTURE_IDS = (
    [f"enum-{k}" for k in EXPECTED_CLASS_COUNTS]
    + [fx.id for fx in FAMILY_FIXTURES]
    + [fx.id for fx in INVOLUTIVE_FIXTURES]
)


def run_fixture(fixture_id: str) -> FixtureResult:
    if fixture_id.startswith("enum-"):
        key = fixture_id[len("enum-"):]
        if key not in EXPECTED_CLASS_COUNTS:
            raise KeyError(f"unknown fixture {fixture_id}")
        return run_enum_fixture(key)
    for fx in FAMILY_FIXTURES:
        if fx.id == fixture_id:
            return run_family_fixture(fx)
    for fx in INVOLUTIVE_FIXTURES:
        if fx.id == fixture_id:
            return run_involutive_fixture(fx)
    raise KeyError(f"unknown fixture {fixture_id}")


def run_all(ids: Optional[Sequence[str]] = None) -> list[FixtureResult]:
    out = []
    for fid in ids or ALL_FIXTURE_IDS:
        out.append(run_fixture(fid))
    return out
