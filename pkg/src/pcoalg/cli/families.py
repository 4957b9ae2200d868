"""``verify`` families: seeded property checks reported as one record each."""

from __future__ import annotations

from .. import properties as props
from .printer import format_expr, term_strings

FAMILIES = ("d2", "delta2", "cochain", "zcochain", "fpco", "quasi_inverse", "intertwining",
            "globality", "naturality", "functoriality", "homotopy")


def _terms(residual):
    if hasattr(residual, "tails") and residual.tails:
        return term_strings(residual) + [format_expr(type(residual)(residual.domain, tails=residual.tails))]
    if hasattr(residual, "tails"):
        return term_strings(residual)
    return [str(residual)]


def run_family(name, family, params, runner, rng):
    from .script import record

    env = runner._need_env()
    dom = env.domain
    samples = int(params.get("samples", 20))
    if family == "d2":
        reports = [props.check_d_squared(dom, rng, samples)]
    elif family == "delta2":
        reports = [props.check_delta_squared(dom, rng, samples)]
    elif family == "cochain":
        reports = [props.check_cochain_f(dom, rng, samples)]
    elif family == "zcochain":
        reports = [props.check_cochain_z(dom, rng, samples)]
    elif family == "fpco":
        reports = [props.check_f_routes(dom, rng, samples)]
    elif family == "quasi_inverse":
        reports = list(props.check_quasi_inverse(dom, rng, samples))
    elif family == "intertwining":
        reports = list(props.check_intertwining(dom, rng, samples))
    elif family == "globality":
        reports = list(props.check_globality(dom, rng, samples, env.order))
    elif family in ("naturality", "functoriality"):
        check = props.check_naturality if family == "naturality" else props.check_functoriality
        reports = [check(dom, rng, samples, env.order, x_dependent=params.get("x_dependent", "0") == "1",
                         max_order=int(params.get("max_order", 3)))]
    elif family == "homotopy":
        key = params.get("lambda")
        if key is None:
            raise ValueError("homotopy needs lambda=<binding>")
        if key not in env.bindings:
            raise ValueError(f"unknown binding {key!r}")
        reports = list(props.check_homotopy(runner._guard(env.bindings[key]), rng, samples))
    else:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    failures = [(rep.name, label, res) for rep in reports for label, res in rep.failures]
    truncated = any(getattr(res, "truncated", False) for _, _, res in failures)
    if not failures:
        return record(name, "pass")
    first_name, label, res = failures[0]
    terms = [f"{first_name} sample {label}: {t}" for t in _terms(res)]
    return record(name, "fail", terms, truncated)
