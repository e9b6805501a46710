"""Bi-Lipschitz identity cards and non-equivalence certificates for
plane curve germs f(x, y).

The heavy lifting happens in the C++ extension ``_canyonlab``; this
package wraps its JSON interface in plain dicts.
"""

import json as _json

try:
    from ._canyonlab import (
        GermComputeError,
        GermParseError,
        card_json as _card_json,
        compare_json as _compare_json,
        render as _render,
        set_numerics,
    )
except ImportError:  # extension next to the package on sys.path (dev builds)
    from _canyonlab import (
        GermComputeError,
        GermParseError,
        card_json as _card_json,
        compare_json as _compare_json,
        render as _render,
        set_numerics,
    )

__all__ = [
    "card",
    "compare",
    "sweep",
    "render",
    "set_numerics",
    "GermParseError",
    "GermComputeError",
]


def _bindings(bindings):
    return {k: str(v) for k, v in (bindings or {}).items()}


def render(expr, bindings=None):
    """Canonical text form of a germ expression."""
    return _render(expr, _bindings(bindings))


def card(expr, bindings=None, trunc=""):
    """Identity card of a germ expression, as a dict."""
    return _json.loads(_card_json(expr, _bindings(bindings), str(trunc)))


def compare(f, g, bindings=None, certificate=False, trunc=""):
    """Decide non-equivalence of two germs; returns the verdict dict."""
    return _json.loads(
        _compare_json(f, g, _bindings(bindings), certificate, str(trunc))
    )


def sweep(expr, param, values, bindings=None, certificate=False):
    """Pairwise-compare a parametric family; returns pair verdicts and
    the partition of values into not-refuted classes."""
    values = [str(v) for v in values]
    parent = list(range(len(values)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pairs = []
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            bi = dict(bindings or {})
            bi[param] = values[i]
            bj = dict(bindings or {})
            bj[param] = values[j]
            fi = render(expr, bi)
            fj = render(expr, bj)
            verdict = compare(fi, fj, certificate=certificate)
            pairs.append({"i": values[i], "j": values[j], "result": verdict})
            if verdict["verdict"] != "not_equivalent":
                parent[find(i)] = find(j)
    classes = {}
    for i in range(len(values)):
        classes.setdefault(find(i), []).append(values[i])
    return {
        "param": param,
        "values": values,
        "pairs": pairs,
        "not_refuted_classes": list(classes.values()),
    }
