"""JSON diagonal configs: ``{"kind": ..., "params": {...}}``.

Kinds are ``ua``, ``la``, ``power``, ``frechet``, ``example23``,
``mo_product``, ``piecewise`` (``knots`` + ``exponents``) and ``mixture``
(``components``, a list of configs, + ``weights``).
"""

import json
import os

from .diagonal import MixtureDiagonal, make_family, mix
from .errors import DomainError


class ConfigError(DomainError):
    """A diagonal config is malformed or describes an inadmissible diagonal."""


REQUIRED = {
    "ua": {"a"},
    "la": {"a"},
    "power": {"p"},
    "frechet": {"alpha"},
    "example23": set(),
    "mo_product": {"alpha", "beta"},
    "piecewise": {"knots", "exponents"},
    "mixture": {"components", "weights"},
}


def diagonal_from_config(obj, path="$"):
    """Build a diagonal from a parsed config, reporting errors by JSON path."""
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object, got {type(obj).__name__}")
    extra = set(obj) - {"kind", "params"}
    if extra:
        raise ConfigError(f"{path}: unexpected keys {sorted(extra)}")
    kind = obj.get("kind")
    if kind not in REQUIRED:
        raise ConfigError(f"{path}.kind: unknown kind {kind!r}; expected one of {sorted(REQUIRED)}")
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError(f"{path}.params: expected an object")
    missing = REQUIRED[kind] - set(params)
    unknown = set(params) - REQUIRED[kind]
    if missing:
        raise ConfigError(f"{path}.params: missing {sorted(missing)} for kind {kind!r}")
    if unknown:
        raise ConfigError(f"{path}.params: unexpected {sorted(unknown)} for kind {kind!r}")

    if kind == "mixture":
        comps = params["components"]
        if not isinstance(comps, list) or not comps:
            raise ConfigError(f"{path}.params.components: expected a non-empty list")
        children = [diagonal_from_config(c, f"{path}.params.components[{i}]")
                    for i, c in enumerate(comps)]
        try:
            return mix(children, params["weights"])
        except (DomainError, TypeError, ValueError) as exc:
            raise ConfigError(f"{path}.params.weights: {exc}") from None

    for key, value in params.items():
        ok = (isinstance(value, list) and all(_is_number(v) for v in value)
              if key in ("knots", "exponents") else _is_number(value))
        if not ok:
            raise ConfigError(f"{path}.params.{key}: expected number(s), got {value!r}")
    try:
        return make_family(kind, **params)
    except DomainError as exc:
        raise ConfigError(f"{path}.params: {exc}") from None


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def diagonal_to_config(d):
    """Inverse of :func:`diagonal_from_config`."""
    if isinstance(d, MixtureDiagonal):
        return {"kind": "mixture", "params": {
            "components": [diagonal_to_config(c) for c in d.components],
            "weights": d.weights.tolist()}}
    if d.kind not in REQUIRED:
        raise ConfigError(f"diagonal kind {d.kind!r} has no config form")
    return {"kind": d.kind, "params": dict(d.params)}


def parse_diagonal(text, source="<inline>"):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return diagonal_from_config(obj)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_diagonal(source):
    """Read a diagonal from a config file path or from inline JSON text."""
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_diagonal(fh.read(), source)
    if source.lstrip().startswith("{"):
        return parse_diagonal(source)
    raise ConfigError(f"{source}: no such file, and not inline JSON")
