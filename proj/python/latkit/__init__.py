"""Integral lattice toolkit."""

import json
from fractions import Fraction

from . import _latkit
from ._latkit import (
    ArgumentError,
    CapacityError,
    EmptyError,
    LatticeError,
    NormObstruction,
    NotANeighborError,
    ParseError,
    RankError,
    closest_vector as _closest_vector,
    decompose,
    even_neighbor as _even_neighbor,
    find_isometry,
    format_gram,
    info as _info,
    is_isometric,
    length_function,
    length_spectrum,
    modular_seed,
    neighbor as _neighbor,
    odd_partner as _odd_partner,
    parse_gram,
    relevant_vectors,
    root_lattice,
    short_vectors,
    walsh_hadamard,
)

__all__ = [
    "ArgumentError",
    "CapacityError",
    "EmptyError",
    "LatticeError",
    "NormObstruction",
    "NotANeighborError",
    "ParseError",
    "RankError",
    "automorphism_order",
    "automorphism_group",
    "basis_from_generators",
    "closest_vector",
    "decompose",
    "estimate_g",
    "even_neighbor",
    "even_unimodular_mass",
    "explore_genus",
    "find_isometry",
    "format_gram",
    "info",
    "is_isometric",
    "length_function",
    "length_spectrum",
    "mass_check",
    "modular_seed",
    "neighbor",
    "odd_partner",
    "parse_gram",
    "read_gram",
    "relevant_vectors",
    "root_lattice",
    "short_vectors",
    "spectrum_histogram",
    "walsh_hadamard",
]


def _rows(m):
    return [[Fraction(x) for x in row] for row in m]


def read_gram(path):
    with open(path, encoding="utf-8") as f:
        return parse_gram(f.read())


def info(gram):
    d = _info(gram)
    d["det"] = int(d["det"])
    return d


def closest_vector(gram, target):
    point, dist = _closest_vector(gram, [str(Fraction(x)) for x in target])
    return point, Fraction(dist)


def automorphism_group(gram):
    d = _latkit.automorphism_group(gram)
    d["order"] = int(d["order"])
    return d


def automorphism_order(gram):
    return automorphism_group(gram)["order"]


def basis_from_generators(vectors, algorithm="covering", workers=1):
    d = _latkit.basis_from_generators(vectors, algorithm, workers)
    d["basis"] = [[int(x) for x in row] for row in d["basis"]]
    return d


def _step(d):
    d["transition"] = _rows(d["transition"])
    d["gram"] = _rows(d["gram"])
    return d


def neighbor(gram, v):
    return _step(_neighbor(gram, v))


def even_neighbor(gram, v):
    return _step(_even_neighbor(gram, v))


def odd_partner(gram, v):
    return _step(_odd_partner(gram, v))


def explore_genus(gram, workers=1, max_classes=1000):
    """Genus report as a dict; the mass is a Fraction."""
    report = json.loads(_latkit.explore_genus(gram, workers, max_classes))
    report["mass"] = Fraction(report["mass"])
    return report


def even_unimodular_mass(n):
    return Fraction(_latkit.even_unimodular_mass(n))


def mass_check(report, expected):
    """Returns (ok, expected - mass)."""
    diff = Fraction(expected) - Fraction(report["mass"])
    return diff == 0, diff


def spectrum_histogram(values):
    """value -> multiplicity, largest value first."""
    return dict(_latkit.spectrum_histogram(values))


def estimate_g(gram, samples=1_000_000, seed=0, workers=1, cosets=None):
    g = [[str(Fraction(x)) for x in row] for row in gram]
    offs = [[str(Fraction(x)) for x in c] for c in (cosets or [])]
    d = _latkit.estimate_g(g, samples, seed, workers, offs)
    d["det_used"] = Fraction(d["det_used"])
    return d
