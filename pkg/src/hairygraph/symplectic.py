"""Symplectic label alphabets.

Hairs carry basis vectors of a symplectic vector space.  V_n has basis
p_1, q_1, .., p_n, q_n with omega(p_i, q_i) = 1.  The stabilising space
W_d used by the edge-cutting map has its own primed basis, written with
capital letters P_i, Q_i here (serialised as "P1", "Q1", ..).

A label is a pair (family, index) with family in {"p", "q", "P", "Q"}.
"""

from __future__ import annotations

from dataclasses import dataclass

FAMILIES = ("p", "q", "P", "Q")
_DUAL = {"p": "q", "q": "p", "P": "Q", "Q": "P"}


def label(family: str, index: int) -> tuple:
    assert family in FAMILIES and index >= 1
    return (family, index)


def label_to_string(lab) -> str:
    return f"{lab[0]}{lab[1]}"


def label_from_string(s: str):
    fam = s[0]
    if fam not in FAMILIES:
        raise ValueError(f"bad label {s!r}")
    return (fam, int(s[1:]))


def dual(lab):
    return (_DUAL[lab[0]], lab[1])


def omega(a, b) -> int:
    """Symplectic form: omega(p_i, q_i) = +1 = omega(P_i, Q_i), else 0."""
    if a[1] != b[1]:
        return 0
    if (a[0], b[0]) in (("p", "q"), ("P", "Q")):
        return 1
    if (a[0], b[0]) in (("q", "p"), ("Q", "P")):
        return -1
    return 0


def is_positive(lab) -> bool:
    """Whether the label lies in the Lagrangian V^+ spanned by the p_i."""
    return lab[0] == "p"


@dataclass(frozen=True)
class SymplecticSpace:
    """V_n, together with the labels it provides."""

    n: int

    @property
    def dimension(self) -> int:
        return 2 * self.n

    def labels(self) -> tuple:
        out = []
        for i in range(1, self.n + 1):
            out.append(("p", i))
            out.append(("q", i))
        return tuple(out)

    def positive_labels(self) -> tuple:
        return tuple(("p", i) for i in range(1, self.n + 1))


def stabilizer_labels(d: int) -> tuple:
    """Labels of the auxiliary space W_d: dimension 2N with N = floor(3d/2)."""
    N = (3 * d) // 2
    out = []
    for i in range(1, N + 1):
        out.append(("P", i))
        out.append(("Q", i))
    return tuple(out)


def relabel_stabilizer_label(lab, n: int):
    """Embed W_d into a larger V: P_i -> p_{n+i}, Q_i -> q_{n+i}."""
    fam, i = lab
    if fam == "P":
        return ("p", n + i)
    if fam == "Q":
        return ("q", n + i)
    return lab
