"""JSON scheme files and report serialization.

Scheme files carry ``"kind": "classical"`` (p/q arrays plus the referee
quadruple) or ``"kind": "strict"`` (Alice's states as [re, im] amplitude
pairs, and either explicit Bob states or a scalar asymmetry "C").  Floats are
emitted with Python's shortest round-trip repr, which is lossless for
doubles, so load -> save -> load reproduces identical values.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .classical import OneBitScheme
from .strictq import FingerprintSet, StrictScheme


def _complex_pairs(states: np.ndarray) -> list:
    return [[[float(amp.real), float(amp.imag)] for amp in row] for row in states]


def _states_from_pairs(rows) -> list:
    return [[complex(re, im) for re, im in row] for row in rows]


def scheme_to_dict(scheme) -> dict:
    if isinstance(scheme, OneBitScheme):
        return {
            "kind": "classical",
            "strings": list(scheme.strings),
            "p": [float(v) for v in scheme.p],
            "q": [float(v) for v in scheme.q],
            "r": [float(v) for v in scheme.r],
        }
    if isinstance(scheme, StrictScheme):
        doc = {
            "kind": "strict",
            "strings": list(scheme.strings),
            "alice": _complex_pairs(scheme.alice.states),
        }
        if scheme.bob_from_c is not None:
            doc["C"] = float(scheme.bob_from_c)
        else:
            doc["bob"] = _complex_pairs(scheme.bob.states)
        return doc
    raise TypeError(f"cannot serialize {type(scheme).__name__}")


def scheme_from_dict(doc: dict):
    try:
        kind = doc["kind"]
    except (TypeError, KeyError):
        raise ValueError("scheme file must carry a 'kind' field") from None
    if kind == "classical":
        return OneBitScheme(
            strings=tuple(doc["strings"]),
            p=np.array(doc["p"], dtype=float),
            q=np.array(doc["q"], dtype=float),
            r=np.array(doc["r"], dtype=float),
        )
    if kind == "strict":
        strings = tuple(doc["strings"])
        alice = FingerprintSet.from_states(strings, _states_from_pairs(doc["alice"]))
        if "C" in doc and "bob" in doc:
            raise ValueError("strict scheme must give either 'bob' or 'C', not both")
        if "C" in doc:
            return StrictScheme.from_alice(alice, float(doc["C"]))
        if "bob" in doc:
            bob = FingerprintSet.from_states(strings, _states_from_pairs(doc["bob"]))
            return StrictScheme.from_sets(alice, bob)
        raise ValueError("strict scheme needs 'bob' states or an asymmetry 'C'")
    raise ValueError(f"unknown scheme kind {kind!r}")


def save_scheme(scheme, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scheme_to_dict(scheme), fh, indent=2)
        fh.write("\n")


def load_scheme(path):
    with open(path, "r", encoding="utf-8") as fh:
        return scheme_from_dict(json.load(fh))


def scheme_digest(scheme) -> str:
    """Stable content hash of a scheme (sha256 of its canonical JSON)."""
    blob = json.dumps(scheme_to_dict(scheme), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def matrix_rows(strings, matrix) -> list:
    """Flatten a per-pair matrix into (alpha, beta, value) rows."""
    return [
        {"alpha": a, "beta": b, "accept_prob": float(matrix[i][j])}
        for i, a in enumerate(strings)
        for j, b in enumerate(strings)
    ]


def matrix_csv(strings, matrix) -> str:
    lines = ["alpha,beta,accept_prob"]
    for row in matrix_rows(strings, matrix):
        lines.append(f"{row['alpha']},{row['beta']},{row['accept_prob']!r}")
    return "\n".join(lines) + "\n"
