"""Named check suites binding the homology and cover machinery to verdicts.

Each check builds its own complexes or covers, gathers structured evidence,
and derives a pass/fail verdict from that evidence alone, so a serialized
check can be audited without re-running it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import (
    DEFAULT_EPSILON,
    cap_cover,
    empirical_nerve,
    lift_chain,
    sample_sphere,
    verify_cover,
)
from .deleted_square import (
    CWComplexGF2,
    deleted_square,
    orbit_complex,
    orbit_label,
    orbit_shape,
    product_label,
    product_shape,
)
from .homology import betti_profile, free_facet_report, top_homology_vanishes
from .simplicial import skeleton_complex

DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 42

CHECK_IDS = (
    "q-table",
    "thm4.3-odd",
    "thm4.3-even",
    "remark4.4",
    "lemma4.1-lift",
    "cap-cover",
)


def q_of(h: int) -> int:
    """Minimal multiplicity of an antipodal-free open cover of the h-sphere."""
    if h < 0:
        raise ValueError("sphere dimension must be nonnegative")
    if h == 0:
        return 1
    return h // 2 + 2


def min_vertices(h: int) -> int:
    """Minimal cardinality of such a cover at the minimal multiplicity."""
    if h < 1:
        raise ValueError("sphere dimension must be at least 1")
    if h == 1:
        return 3
    if h == 2:
        return 4
    return h + 3


@dataclass(frozen=True)
class QEntry:
    h: int
    q: int
    min_vertices: int | None

    def to_dict(self) -> dict:
        return {"h": self.h, "q": self.q, "min_vertices": self.min_vertices}


def q_entry(h: int) -> QEntry:
    return QEntry(h=h, q=q_of(h), min_vertices=min_vertices(h) if h >= 1 else None)


def q_table(h_max: int) -> list[QEntry]:
    if h_max < 0:
        raise ValueError("sphere dimension must be nonnegative")
    return [q_entry(h) for h in range(h_max + 1)]


@dataclass(frozen=True)
class TheoremCheck:
    """A named check with its parameters, verdict and supporting evidence."""

    id: str
    parameters: dict
    passed: bool
    evidence: dict

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "evidence": self.evidence,
        }


def _guard_k(k: int, allow_k4: bool) -> None:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > 4:
        raise ValueError(
            f"k={k} rejected: deleted-square cell counts grow combinatorially "
            "and the homology pass would need hours; k is capped at 4"
        )
    if k == 4 and not allow_k4:
        raise ValueError(
            "k=4 builds tens of thousands of cells and runs for minutes; "
            "pass allow_k4 (CLI: --allow-k4) to proceed"
        )


def _complex_evidence(C: CWComplexGF2, label, with_betti: bool) -> dict:
    ev = {
        "dim": C.dim,
        "cells_per_dim": list(C.counts),
        "euler": C.euler,
        "boundary_squares_to_zero": C.boundary_squares_to_zero(),
        "top_homology_vanishes": top_homology_vanishes(C),
    }
    if with_betti:
        profile = betti_profile(C)
        ev["betti"] = list(profile.betti)
        ev["euler_from_betti"] = sum(
            (-1) ** d * b for d, b in enumerate(profile.betti)
        )
    else:
        ev["betti"] = None
    return ev


def _free_facet_evidence(C: CWComplexGF2, label) -> dict:
    report = free_facet_report(C)
    with_free = report.cells_with_free_facet()
    example = None
    if with_free:
        c = with_free[0]
        example = {"cell": label(c), "free_facet": label(report.free_facets_of[c][0])}
    return {
        "top_cells": len(report.top_cells),
        "top_cells_with_free_facet": len(with_free),
        "all_tops_have_free_facet": report.all_have_free_facet(),
        "free_facet_example": example,
    }


def _check_thm43_odd(k: int, allow_k4: bool) -> TheoremCheck:
    _guard_k(k, allow_k4)
    K = skeleton_complex(2 * k + 1, k)
    D = deleted_square(K)
    O = orbit_complex(D)
    with_betti = k <= 3
    ev = {
        "n_vertices": 2 * k + 1,
        "skeleton_dim": k,
        "expected_dim": 2 * k - 1,
        "deleted_square": _complex_evidence(D, product_label, with_betti)
        | _free_facet_evidence(D, product_label),
        "orbit": _complex_evidence(O, orbit_label, with_betti)
        | _free_facet_evidence(O, orbit_label),
        "expected_top_homology_vanishes": k >= 2,
    }
    d_ev, o_ev = ev["deleted_square"], ev["orbit"]
    structural = (
        d_ev["dim"] == ev["expected_dim"]
        and o_ev["dim"] == ev["expected_dim"]
        and d_ev["boundary_squares_to_zero"]
        and o_ev["boundary_squares_to_zero"]
    )
    if k >= 2:
        passed = structural and all(
            c["top_homology_vanishes"] and c["all_tops_have_free_facet"]
            for c in (d_ev, o_ev)
        )
    else:
        passed = structural and all(
            not c["top_homology_vanishes"] and c["top_cells_with_free_facet"] == 0
            for c in (d_ev, o_ev)
        )
    return TheoremCheck("thm4.3-odd", {"k": k}, passed, ev)


def _even_structure(C: CWComplexGF2, k: int, shape, label) -> dict:
    """Tally the two top-cell families and their facet sharing pattern."""
    report = free_facet_report(C, type_tagger=shape)
    type1 = {(k + 1, k + 1)}
    type2 = {(k + 2, k), (k, k + 2)}
    tops1 = [c for c in report.top_cells if shape(c) in type1]
    tops2 = [c for c in report.top_cells if shape(c) in type2]
    assert len(tops1) + len(tops2) == len(report.top_cells)
    type2_free = [c for c in tops2 if report.free_facets_of[c]]
    type1_free = [c for c in tops1 if report.free_facets_of[c]]
    pairing_ok = True
    for c in tops1:
        d, j = C.index_of(c)
        for i in C.boundary[d][j]:
            f = C.cells[d - 1][i]
            cofs = report.top_cofaces_of[f]
            if len(cofs) != 2:
                pairing_ok = False
                break
            other = cofs[0] if cofs[1] == c else cofs[1]
            if shape(other) not in type2:
                pairing_ok = False
                break
        if not pairing_ok:
            break
    example = None
    if type2_free:
        c = type2_free[0]
        example = {"cell": label(c), "free_facet": label(report.free_facets_of[c][0])}
    return {
        "type1_cells": len(tops1),
        "type2_cells": len(tops2),
        "type2_cells_with_free_facet": len(type2_free),
        "type2_all_have_free_facet": bool(tops2) and len(type2_free) == len(tops2),
        "type1_cells_with_free_facet": len(type1_free),
        "type1_facets_shared_with_one_type2": pairing_ok,
        "type2_free_facet_example": example,
    }


def _check_thm43_even(k: int, allow_k4: bool) -> TheoremCheck:
    _guard_k(k, allow_k4)
    K = skeleton_complex(2 * k + 2, k + 1)
    D = deleted_square(K)
    O = orbit_complex(D)
    with_betti = k <= 3

    def oshape(c):
        return orbit_shape(c)

    def pshape(c):
        return product_shape(c)

    ev = {
        "n_vertices": 2 * k + 2,
        "skeleton_dim": k + 1,
        "expected_dim": 2 * k,
        "deleted_square": _complex_evidence(D, product_label, with_betti)
        | _even_structure(D, k, pshape, product_label),
        "orbit": _complex_evidence(O, orbit_label, with_betti)
        | _even_structure(O, k, oshape, orbit_label),
        "expected_orbit_top_homology_vanishes": k >= 2,
    }
    d_ev, o_ev = ev["deleted_square"], ev["orbit"]
    structural = (
        d_ev["dim"] == ev["expected_dim"]
        and o_ev["dim"] == ev["expected_dim"]
        and d_ev["boundary_squares_to_zero"]
        and o_ev["boundary_squares_to_zero"]
    )
    if k >= 2:
        passed = (
            structural
            and o_ev["top_homology_vanishes"]
            and d_ev["type2_all_have_free_facet"]
            and d_ev["type1_cells_with_free_facet"] == 0
            and d_ev["type1_facets_shared_with_one_type2"]
        )
    else:
        passed = (
            structural
            and not o_ev["top_homology_vanishes"]
            and d_ev["type2_cells_with_free_facet"] == 0
        )
    return TheoremCheck("thm4.3-even", {"k": k}, passed, ev)


def _check_remark44(parity: str) -> TheoremCheck:
    if parity not in {"odd", "even", "both"}:
        raise ValueError(f"parity must be odd, even or both, got {parity!r}")
    ev: dict = {}
    results = []
    if parity in {"odd", "both"}:
        sub = _check_thm43_odd(1, allow_k4=False)
        ev["odd"] = sub.evidence
        results.append(sub.passed)
    if parity in {"even", "both"}:
        sub = _check_thm43_even(1, allow_k4=False)
        ev["even"] = sub.evidence
        results.append(sub.passed)
    return TheoremCheck("remark4.4", {"parity": parity}, all(results), ev)


def _check_cap_cover(h: int, samples: int, seed: int) -> TheoremCheck:
    if h < 1:
        raise ValueError("sphere dimension must be at least 1")
    C = cap_cover(h)
    S = sample_sphere(h, samples, seed)
    report = verify_cover(C, S)
    nerve = empirical_nerve(C, S)
    ev = {
        "n_sets": C.n_sets,
        "expected_multiplicity": h + 1,
        "report": report.to_dict(),
        "nerve": {
            "n_vertices": nerve.n_vertices,
            "dimension": nerve.dimension,
            "n_faces": len(nerve.faces),
        },
    }
    passed = (
        report.covered
        and report.antipodal_free
        and report.max_multiplicity == h + 1
        and nerve.dimension == h
    )
    return TheoremCheck(
        "cap-cover", {"h": h, "samples": samples, "seed": seed}, passed, ev
    )


def _check_lift(h: int, epsilon: float, samples: int, seed: int) -> TheoremCheck:
    if h < 1:
        raise ValueError("sphere dimension must be at least 1")
    levels = []
    passed = True
    for cover in lift_chain(h, epsilon):
        dim = cover.sphere_dim
        S = sample_sphere(dim, samples, seed)
        report = verify_cover(cover, S)
        bound = dim + 1
        ok = (
            cover.n_sets == dim + 2
            and report.covered
            and report.antipodal_free
            and report.max_multiplicity <= bound
        )
        passed = passed and ok
        levels.append({
            "sphere_dim": dim,
            "n_sets": cover.n_sets,
            "multiplicity_bound": bound,
            "bound_attained": report.max_multiplicity == bound,
            "level_ok": ok,
            "report": report.to_dict(),
        })
    ev = {"epsilon": epsilon, "levels": levels}
    params = {"h": h, "epsilon": epsilon, "samples": samples, "seed": seed}
    return TheoremCheck("lemma4.1-lift", params, passed, ev)


def _check_q_table(h_max: int) -> TheoremCheck:
    entries = q_table(h_max)
    identities = {
        "q0_is_1": q_of(0) == 1,
        "q2_is_3": q_of(2) == 3,
        "circle_cover_has_3_sets": min_vertices(1) == 3,
        "two_sphere_cover_has_4_sets": min_vertices(2) == 4,
        "higher_spheres_need_h_plus_3": all(
            min_vertices(h) == h + 3 for h in range(3, max(h_max, 3) + 1)
        ),
        "q_nondecreasing": all(
            q_of(h) <= q_of(h + 1) for h in range(h_max)
        ),
    }
    ev = {"entries": [e.to_dict() for e in entries], "identities": identities}
    return TheoremCheck("q-table", {"h_max": h_max}, all(identities.values()), ev)


def run_check(
    check_id: str,
    *,
    k: int | None = None,
    h: int | None = None,
    h_max: int | None = None,
    epsilon: float | None = None,
    samples: int | None = None,
    seed: int | None = None,
    parity: str | None = None,
    allow_k4: bool = False,
) -> TheoremCheck:
    """Run one named check with defaults for any omitted parameter."""
    samples = DEFAULT_SAMPLES if samples is None else samples
    seed = DEFAULT_SEED if seed is None else seed
    epsilon = DEFAULT_EPSILON if epsilon is None else epsilon
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if check_id == "q-table":
        return _check_q_table(10 if h_max is None else h_max)
    if check_id == "thm4.3-odd":
        return _check_thm43_odd(2 if k is None else k, allow_k4)
    if check_id == "thm4.3-even":
        return _check_thm43_even(2 if k is None else k, allow_k4)
    if check_id == "remark4.4":
        return _check_remark44("both" if parity is None else parity)
    if check_id == "cap-cover":
        return _check_cap_cover(2 if h is None else h, samples, seed)
    if check_id == "lemma4.1-lift":
        return _check_lift(4 if h is None else h, epsilon, samples, seed)
    raise ValueError(f"unknown check id {check_id!r}; known ids: {', '.join(CHECK_IDS)}")
