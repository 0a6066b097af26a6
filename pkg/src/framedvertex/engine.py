"""Bracket table generation by the spectral-curve recursion.

The table stores exact values indexed by genus and a sorted tuple of
descendant indices.  Starting from the three-point and one-point seeds,
each stable cell (g, n) is produced from strictly lower-complexity cells
(complexity chi = 2g - 2 + n) by matching coefficients in the phi' basis:

    (f(f+1))^{n-1} sum_b bracket(g, b) prod_k phi'_{b_k}(t_k)
      =   (f(f+1))^n     [genus-reduction sum with pair kernels]
        - (f(f+1))^{n-1} [stable-splitting sum with pair kernels]
        - (f(f+1))^{n-2} [point-kernel sum over companion slots]

The right side distinguishes slot 0, so recovering values that are
symmetric under permutations of all slots is a strong consistency check;
it is verified on every extraction, as is the dimension bound
sum(b) <= 3g - 3 + n.
"""

from __future__ import annotations

import json
from itertools import permutations

from .errors import (MissingDependency, SupportBoundViolation,
                     SymmetryViolation)
from .kernels import KernelWorkspace
from .ratfunc import FR_ZERO, FRational
from .tpoly import TPolynomial

_F = FRational.variable()
_FF1 = _F * (_F + 1)  # f (f + 1)

FORMAT_NAME = "framedvertex-brackets"
FORMAT_VERSION = 1


def is_stable(g, n):
    return g >= 0 and n >= 1 and 2 * g - 2 + n > 0


def support_bound(g, n):
    return 3 * g - 3 + n


class BracketTable:
    """Map (genus, sorted index tuple) -> FRational, per computed cell."""

    def __init__(self):
        self._entries = {}
        self._cells = set()

    def mark_cell(self, g, n, entries):
        self._cells.add((g, n))
        for key, value in entries.items():
            if not value.is_zero:
                self._entries[(g, key)] = value

    def has_cell(self, g, n):
        return (g, n) in self._cells

    def cells(self):
        return sorted(self._cells, key=lambda c: (2 * c[0] - 2 + c[1], c[0]))

    @property
    def chi_max(self):
        return max((2 * g - 2 + n for g, n in self._cells), default=0)

    def value(self, g, indices):
        """Bracket value; zero inside a computed cell, error outside."""
        key = tuple(sorted(indices))
        if (g, len(key)) not in self._cells:
            raise MissingDependency("cell (%d, %d) not computed" % (g, len(key)))
        return self._entries.get((g, key), FR_ZERO)

    def cell_entries(self, g, n):
        if (g, n) not in self._cells:
            raise MissingDependency("cell (%d, %d) not computed" % (g, n))
        return {key: v for (gg, key), v in self._entries.items()
                if gg == g and len(key) == n}

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self._cells == other._cells and self._entries == other._entries

    # -- serialization -------------------------------------------------------

    def to_json(self):
        entries = {}
        for (g, key), value in self._entries.items():
            entries["%d|%s" % (g, ",".join(map(str, key)))] = value.as_text()
        obj = {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "chi_max": self.chi_max,
            "cells": sorted("%d,%d" % (g, n) for g, n in self._cells),
            "entries": entries,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ": "),
                          indent=1) + "\n"

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        if obj.get("format") != FORMAT_NAME or obj.get("version") != FORMAT_VERSION:
            raise ValueError("unrecognized bracket table file")
        table = cls()
        for cell in obj["cells"]:
            g, n = map(int, cell.split(","))
            table._cells.add((g, n))
        for key, text_value in obj["entries"].items():
            g_s, idx = key.split("|")
            indices = tuple(int(x) for x in idx.split(",")) if idx else ()
            table._entries[(int(g_s), indices)] = FRational.from_text(text_value)
        return table


def seed_initial_data():
    """Three-point and one-point seed cells."""
    table = BracketTable()
    table.mark_cell(0, 3, {(0, 0, 0): FRational.from_int(1)})
    table.mark_cell(1, 1, {
        (0,): FRational.poly([1, 1, 1]) / 24,
        (1,): FRational.poly([0, -1, -1]) / 24,
    })
    return table


def _compositions(slots, bound):
    """All tuples of ``slots`` non-negative ints with sum <= bound."""
    if slots == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in _compositions(slots - 1, bound - first):
            yield (first,) + rest


def _subsets(items):
    out = [()]
    for x in items:
        out += [s + (x,) for s in out]
    return out


def recursion_step(g, n, table, workspace):
    """Compute all bracket values of one stable cell from lower cells.

    Returns a dict keyed by sorted index tuples.  Raises
    ``SymmetryViolation`` / ``SupportBoundViolation`` if the extracted
    coefficients fail the consistency checks, and ``MissingDependency``
    when a required lower cell is absent.
    """
    if not is_stable(g, n):
        raise ValueError("cell (%d, %d) is not stable" % (g, n))
    coeff = {}

    def add(beta, value):
        prev = coeff.get(beta)
        if prev is None:
            coeff[beta] = value
        else:
            s = prev + value
            if s.is_zero:
                del coeff[beta]
            else:
                coeff[beta] = s

    spect = n - 1  # companion slots 1..n-1

    # genus reduction: brackets at (g-1, n+1) against pair kernels
    if g >= 1:
        bound = support_bound(g - 1, n + 1)
        pref = _FF1 ** n
        for bs in _compositions(spect, bound):
            rem = bound - sum(bs)
            for a1 in range(rem + 1):
                for a2 in range(rem - a1 + 1):
                    br = table.value(g - 1, (a1, a2) + bs)
                    if br.is_zero:
                        continue
                    w = pref * br
                    for c, dc in workspace.decompose_pair_kernel(a1, a2).items():
                        add((c,) + bs, w * dc)

    # stable splittings: ordered pairs of lower cells against pair kernels
    if spect >= 0:
        pref = _FF1 ** (n - 1)
        splits = []
        for g1 in range(g + 1):
            g2 = g - g1
            for idx in _subsets(tuple(range(spect))):
                if not is_stable(g1, 1 + len(idx)):
                    continue
                if not is_stable(g2, 1 + (spect - len(idx))):
                    continue
                splits.append((g1, g2, frozenset(idx)))
        if splits:
            for bs in _compositions(spect, max(0, support_bound(g, n) - 2)):
                for g1, g2, idx in splits:
                    b_i = tuple(bs[k] for k in range(spect) if k in idx)
                    b_j = tuple(bs[k] for k in range(spect) if k not in idx)
                    bound1 = support_bound(g1, 1 + len(b_i)) - sum(b_i)
                    bound2 = support_bound(g2, 1 + len(b_j)) - sum(b_j)
                    if bound1 < 0 or bound2 < 0:
                        continue
                    for a1 in range(bound1 + 1):
                        br1 = table.value(g1, (a1,) + b_i)
                        if br1.is_zero:
                            continue
                        for a2 in range(bound2 + 1):
                            br2 = table.value(g2, (a2,) + b_j)
                            if br2.is_zero:
                                continue
                            w = pref * br1 * br2
                            for c, dc in workspace.decompose_pair_kernel(a1, a2).items():
                                add((c,) + bs, -(w * dc))

    # companion-slot terms: brackets at (g, n-1) against point kernels
    if n >= 2:
        bound = support_bound(g, n - 1)
        pref = _FF1 ** (n - 2)
        for j in range(1, n):
            for bs in _compositions(n - 2, bound):
                rem = bound - sum(bs)
                for b in range(rem + 1):
                    br = table.value(g, (b,) + bs)
                    if br.is_zero:
                        continue
                    w = pref * br
                    for (c, d), dc in workspace.decompose_point_kernel(b).items():
                        beta = [0] * n
                        beta[0] = c
                        beta[j] = d
                        others = iter(bs)
                        for k in range(1, n):
                            if k != j:
                                beta[k] = next(others)
                        add(tuple(beta), -(w * dc))

    # extraction: divide out the prefactor, check symmetry and support
    scale = _FF1 ** (n - 1)
    bound_new = support_bound(g, n)
    values = {beta: v / scale for beta, v in coeff.items()}
    entries = {}
    seen = set()
    for beta, v in values.items():
        if sum(beta) > bound_new and not v.is_zero:
            raise SupportBoundViolation(
                "cell (%d,%d): nonzero bracket at %s beyond bound %d"
                % (g, n, beta, bound_new))
        key = tuple(sorted(beta))
        if key in seen:
            continue
        seen.add(key)
        variants = set(permutations(key))
        vals = {values.get(p, FR_ZERO) for p in variants}
        if len(vals) != 1:
            raise SymmetryViolation(
                "cell (%d,%d): asymmetric extraction at %s" % (g, n, key))
        value = vals.pop()
        if not value.is_zero:
            entries[key] = value
    return entries


def assemble_H(g, n, table, tower):
    """The n-variable polynomial generating one cell.

    -(f(f+1))^{n-1} sum over all orderings of bracket(g, b) prod_i phi_{b_i}(t_i).
    """
    out = TPolynomial.zero(n)
    for key, value in table.cell_entries(g, n).items():
        for beta in set(permutations(key)):
            term = TPolynomial.constant(n, value)
            for slot, b in enumerate(beta):
                term = term * tower.phi(b).embed(n, [slot])
            out = out + term
    return out * (-(_FF1 ** (n - 1)))


def budget_cells(chi_max):
    """All stable cells with chi <= chi_max, increasing chi then genus."""
    cells = []
    for chi in range(1, chi_max + 1):
        for g in range(0, (chi + 2) // 2 + 1):
            n = chi + 2 - 2 * g
            if n >= 1:
                cells.append((g, n))
    return cells


def kernel_requirements(cells):
    """(pair index budget, point index budget, tower size) for a cell set."""
    pair = 0
    point = 0
    b_max = 1
    for g, n in cells:
        b_max = max(b_max, support_bound(g, n))
        if 2 * g - 2 + n < 2:
            continue  # seeds
        has_reduction = g >= 1
        has_split = g >= 2 or (g == 1 and n >= 3) or (g == 0 and n >= 5)
        if has_reduction or has_split:
            pair = max(pair, 3 * g + n - 5)
        if n >= 2:
            point = max(point, 3 * g + n - 4)
    b_max = max(b_max, pair + 2, point + 2) + 1
    return pair, point, b_max


def make_workspace(cells, truncation_margin=0):
    pair, point, b_max = kernel_requirements(cells)
    return KernelWorkspace(pair, point, b_max, margin=truncation_margin)


def run_to_budget(chi_max, truncation_margin=0, extra_cells=(), table=None,
                  workspace=None):
    """Populate every stable cell with chi <= chi_max (plus extras).

    Idempotent over a warm table: already-computed cells are left alone.
    """
    if chi_max < 1:
        raise ValueError("chi_max must be >= 1")
    cells = budget_cells(chi_max)
    for cell in extra_cells:
        if cell not in cells:
            cells.append(cell)
    cells.sort(key=lambda c: (2 * c[0] - 2 + c[1], c[0]))
    if table is None:
        table = seed_initial_data()
    todo = [c for c in cells if not table.has_cell(*c)]
    if todo and workspace is None:
        workspace = make_workspace(cells, truncation_margin)
    for g, n in todo:
        table.mark_cell(g, n, recursion_step(g, n, table, workspace))
    return table
