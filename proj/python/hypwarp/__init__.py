"""Python bindings for the hypwarp verification core.

The heavy lifting happens in the compiled extension; these wrappers parse the
JSON reports into plain dictionaries.
"""

import json as _json

try:
    from ._hypwarp import (  # noqa: F401
        HypwarpError,
        bump,
        bump_d1,
        bump_d2,
        hyperbolic_threshold,
        k_function,
        run_json,
        spd_factor,
        suite_json,
    )
except ImportError:  # extension built outside the package (plain CMake builds)
    from _hypwarp import (  # noqa: F401
        HypwarpError,
        bump,
        bump_d1,
        bump_d2,
        hyperbolic_threshold,
        k_function,
        run_json,
        spd_factor,
        suite_json,
    )

__all__ = [
    "HypwarpError",
    "bump",
    "bump_d1",
    "bump_d2",
    "constants",
    "bounded",
    "slowness",
    "verify_chart",
    "deform",
    "curvature",
    "suite",
    "hyperbolic_threshold",
    "k_function",
    "spd_factor",
]


def _run(subcommand, **options):
    return _json.loads(run_json(subcommand, options))


def constants(**options):
    """Full constants ledger for (n, c, xi, eps, t0, eps_g, c_sphere)."""
    return _run("constants", **options)


def bounded(**options):
    return _run("bounded", **options)


def slowness(**options):
    return _run("slowness", **options)


def verify_chart(**options):
    return _run("verify-chart", **options)


def deform(**options):
    return _run("deform", **options)


def curvature(**options):
    return _run("curvature", **options)


def suite(seed=42, progress=False):
    """Run the acceptance suite; returns the parsed report."""
    return _json.loads(suite_json(seed, progress))
