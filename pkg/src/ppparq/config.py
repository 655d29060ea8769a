"""Flat ``key = value`` configuration files.

Blank lines and anything after ``#`` are ignored.  Keys are case-sensitive.
"""
from __future__ import annotations

from .model import UNLIMITED, ArqPolicy, EnergyParams, NetworkParams
from .optimizer import DEFAULT_SEARCH_CAP


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__(f"config key '{key}': {message}")
        self.key = key


# key -> help text
KEYS = {
    "alpha": "path-loss exponent, > 2",
    "r0": "reference link distance in meters, > 0",
    "lambda": "interferer density in nodes/m^2, >= 0",
    "power_ratio": "licensed/unlicensed transmit power ratio W_p/W_s (default 1)",
    "epsilon": "maximum message-drop probability, in (0, 1)",
    "m_cap": "retransmission cap: natural number or 'unlimited'",
    "m": "retransmissions for the evaluated point (default m_cap)",
    "beta": "SIR threshold for the evaluated point (default: closed-form beta* for m)",
    "pc_tx": "transmit circuitry power in mW, >= 0",
    "pc_rx": "receive circuitry power in mW, >= 0",
    "zeta": "power-amplifier drain efficiency, in (0, 1]",
    "search_cap": f"largest m tried by the optimizer (default {DEFAULT_SEARCH_CAP})",
    # sweep-only keys
    "axis": "sweep axis: lambda or epsilon",
    "values": "comma-separated axis values (or use start/stop/num)",
    "start": "first axis value of a log-spaced sweep",
    "stop": "last axis value of a log-spaced sweep",
    "num": "number of log-spaced sweep points",
    "series": "comma-separated values of the non-swept parameter, one curve each",
    "modes": "comma-separated modes, e.g. 'limited(5),unlimited'",
}

REQUIRED_ANALYZE = ("alpha", "r0", "lambda", "epsilon", "m_cap", "pc_tx", "pc_rx", "zeta")


def parse_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(line, f"line {lineno} is not of the form key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(key, f"unknown key on line {lineno}")
        out[key] = value
    return out


def load(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def as_float(values, key, default=None):
    if key not in values or values[key] is None:
        if default is None:
            raise ConfigError(key, "required key is missing")
        return default
    try:
        return float(values[key])
    except (TypeError, ValueError):
        raise ConfigError(key, f"not a number: {values[key]!r}") from None


def as_m(values, key, default=None):
    if key not in values or values[key] is None:
        if default is None:
            raise ConfigError(key, "required key is missing")
        return default
    raw = str(values[key]).strip().lower()
    if raw in ("unlimited", "inf"):
        return UNLIMITED
    if not raw.isdigit():
        raise ConfigError(key, f"not a natural number or 'unlimited': {values[key]!r}")
    return int(raw)


def as_list(values, key):
    try:
        return tuple(float(v) for v in str(values[key]).split(",") if v.strip())
    except ValueError:
        raise ConfigError(key, f"not a comma-separated list of numbers: {values[key]!r}") from None


def _build(key_of, factory, *args):
    try:
        return factory(*args)
    except ValueError as exc:
        word = str(exc).split()[0]
        raise ConfigError(key_of.get(word, word), str(exc)) from None


def network(values, lam=None) -> NetworkParams:
    return _build(
        {"lambda": "lambda"},
        NetworkParams,
        as_float(values, "alpha"),
        as_float(values, "r0"),
        as_float(values, "lambda") if lam is None else lam,
        as_float(values, "power_ratio", 1.0),
    )


def energy(values) -> EnergyParams:
    return _build({}, EnergyParams, as_float(values, "pc_tx"), as_float(values, "pc_rx"), as_float(values, "zeta"))


def policy(values) -> ArqPolicy:
    return _build({}, ArqPolicy, as_m(values, "m_cap"), as_float(values, "epsilon"))


def search_cap(values) -> int:
    cap = as_m(values, "search_cap", DEFAULT_SEARCH_CAP)
    if cap == UNLIMITED:
        raise ConfigError("search_cap", "must be finite")
    return cap
