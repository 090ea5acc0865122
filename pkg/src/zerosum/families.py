"""Generators and classifiers for the parametric extremal families.

Covers the maximal minimal zero-sum families (d1..d6), the short-zero-sum
families (eta1..eta3, plus the rank-three elementary 2-group special case
eta-n1), the exact-exponent families (s1..s3 with translation, plus s-n1),
and the cyclic-group forms (cyc-eta-*, cyc-s-*). Classification searches the
existential quantifiers of the characterizations literally: all bases with
the right order profile, and all translations for the exact-exponent
problem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import NonDivisorError, UnsupportedShapeError, WrongLengthError
from .groups import (
    Basis,
    Element,
    GroupSpec,
    combine,
    elements,
    enumerate_bases,
    negate,
    order_of,
    scale,
    zero,
)
from .sequences import LengthSet, Sequence
from .symmetry import EquivalenceMode, canonical_form

D_LABELS = ("d1", "d2", "d3", "d4", "d5", "d6")
ETA_LABELS = ("eta1", "eta2", "eta3")
S_LABELS = ("s1", "s2", "s3")
SPECIAL_LABELS = ("eta-n1", "s-n1")
CYCLIC_ETA_LABELS = ("cyc-eta-1", "cyc-eta-2a", "cyc-eta-2b")
CYCLIC_S_LABELS = ("cyc-s-1", "cyc-s-2a", "cyc-s-2b")
ALL_LABELS = (D_LABELS + ETA_LABELS + S_LABELS + SPECIAL_LABELS
              + CYCLIC_ETA_LABELS + CYCLIC_S_LABELS)

PROBLEMS = ("davenport-max", "eta-extremal", "s-extremal", "cyclic-eta", "cyclic-s")


@dataclass(frozen=True)
class FamilyWitness:
    """Certificate that a sequence matches one parametric family."""

    label: str
    basis: Optional[Basis]
    params: dict
    translation: Optional[Element] = None

    def to_json_dict(self) -> dict:
        out_params: Dict[str, object] = {}
        for name, value in self.params.items():
            if isinstance(value, int):
                out_params[name] = value
            elif value and isinstance(value[0], tuple):
                out_params[name] = [list(e) for e in value]
            else:
                out_params[name] = list(value)
        return {
            "label": self.label,
            "basis": [list(g) for g in self.basis.generators] if self.basis else None,
            "params": out_params,
            "translation": list(self.translation) if self.translation else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict, group: GroupSpec) -> "FamilyWitness":
        basis = None
        if data.get("basis"):
            gens = tuple(tuple(g) for g in data["basis"])
            basis = Basis(gens, tuple(order_of(group, g) for g in gens))
        params: Dict[str, object] = {}
        for name, value in data.get("params", {}).items():
            if isinstance(value, int):
                params[name] = value
            elif value and isinstance(value[0], list):
                params[name] = tuple(tuple(e) for e in value)
            else:
                params[name] = tuple(value)
        translation = tuple(data["translation"]) if data.get("translation") else None
        return cls(data["label"], basis, params, translation)


def two_two_even_parameter(group: GroupSpec) -> int:
    """The n with G of shape [2, 2, 2n]; raises for other shapes."""
    if (len(group.orders) == 3 and group.orders[0] == 2 and group.orders[1] == 2
            and group.orders[2] % 2 == 0):
        return group.orders[2] // 2
    raise UnsupportedShapeError(f"group {group.orders} is not of shape [2, 2, 2n]")


def standard_basis(group: GroupSpec) -> Basis:
    gens = []
    for i, o in enumerate(group.orders):
        g = [0] * len(group.orders)
        g[i] = 1
        gens.append(tuple(g))
    return Basis(tuple(gens), group.orders)


class _BasisEnv:
    """Arithmetic helpers for one basis {f1, f2, f3} of a [2,2,2n] group."""

    def __init__(self, group: GroupSpec, basis: Basis):
        if tuple(basis.declared_orders) != (2, 2, group.orders[2]):
            raise ValueError(
                f"basis order profile {basis.declared_orders} does not match "
                f"(2, 2, {group.orders[2]})"
            )
        self.group = group
        self.n = two_two_even_parameter(group)
        self.f1, self.f2, self.f3 = basis.generators
        self.basis = basis
        self.klein = frozenset(
            combine(group, scale(group, e1, self.f1), self.f2, e2)
            for e1 in range(2) for e2 in range(2)
        )

    def el(self, c3: int = 0, e2: int = 0, e1: int = 0) -> Element:
        g = scale(self.group, c3 % (2 * self.n), self.f3)
        if e2:
            g = combine(self.group, g, self.f2)
        if e1:
            g = combine(self.group, g, self.f1)
        return g

    def f3_coset(self, x: Element) -> Optional[Element]:
        """x - f3 when it lies in <f1, f2>, else None."""
        d = combine(self.group, x, self.f3, -1)
        return d if d in self.klein else None


def _seq(group: GroupSpec, pairs: Iterable[Tuple[Element, int]]) -> Sequence:
    return Sequence(group, pairs)


def _check_range(cond: bool, label: str, params: dict) -> None:
    if not cond:
        raise ValueError(f"parameters {params} out of range for {label}")


def _dlist_sum(group: GroupSpec, ds: Iterable[Element]) -> Element:
    s = zero(group)
    for d in ds:
        s = combine(group, s, d)
    return s


def _generate_in_basis(label: str, env: _BasisEnv, params: dict) -> Sequence:
    n, G = env.n, env.group
    el = env.el
    if label == "d1":
        v3, v2, v1 = params["v3"], params["v2"], params["v1"]
        _check_range(
            all(v % 2 == 1 and v >= 1 for v in (v3, v2, v1))
            and v3 >= v2 >= v1 and v3 + v2 + v1 == 2 * n + 1,
            label, params)
        return _seq(G, [(el(1), v3), (el(1, 1), v2), (el(1, 0, 1), v1),
                        (el(-1, 1, 1), 1)])
    if label == "d2":
        v3, v2, a = params["v3"], params["v2"], params["a"]
        _check_range(
            v3 % 2 == 1 and v2 % 2 == 1 and v3 >= v2 and v3 + v2 == 2 * n
            and 2 <= a <= n - 1, label, params)
        return _seq(G, [(el(1), v3), (el(1, 1), v2), (el(a, 0, 1), 1),
                        (el(-a, 1, 1), 1)])
    if label == "d3":
        a, b, c = params["a"], params["b"], params["c"]
        _check_range(
            a + b + c == 2 * n + 1 and a <= b <= c
            and 2 <= a <= n - 1 and 2 <= b <= n - 1
            and 2 <= c <= 2 * n - 3 and c not in (n, n + 1), label, params)
        return _seq(G, [(el(1), 2 * n - 1), (el(a, 1), 1), (el(b, 0, 1), 1),
                        (el(c, 1, 1), 1)])
    if label == "d4":
        v, a = params["v"], params["a"]
        _check_range(0 <= v <= n - 1 and 2 <= a <= n - 1, label, params)
        return _seq(G, [(el(1), 2 * n - 1 - 2 * v), (el(1, 1), 2 * v),
                        (env.f2, 1), (el(a, 0, 1), 1), (el(1 - a, 1, 1), 1)])
    if label == "d5":
        a, b = params["a"], params["b"]
        _check_range(a >= b and 2 <= a <= n - 1 and 2 <= b <= n - 1, label, params)
        return _seq(G, [(el(1), 2 * n - 2), (el(a, 1), 1), (el(1 - a, 1), 1),
                        (el(b, 0, 1), 1), (el(1 - b, 0, 1), 1)])
    if label == "d6":
        ds = params["d"]
        _check_range(
            len(ds) == 2 * n and all(d in env.klein for d in ds)
            and _dlist_sum(G, ds) == combine(G, env.f1, env.f2), label, params)
        pairs = [(combine(G, env.f3, d), 1) for d in ds]
        pairs += [(env.f2, 1), (env.f1, 1)]
        return _seq(G, pairs)
    if label == "eta1":
        v, a = params["v"], params["a"]
        _check_range(0 <= v <= n - 1 and 2 <= a <= n - 1, label, params)
        return _seq(G, [(el(1), 2 * n - 1 - 2 * v), (el(1, 1), 2 * v + 1),
                        (env.f2, 1), (el(a, 0, 1), 1), (el(1 - a, 1, 1), 1)])
    if label == "eta2":
        a, b = params["a"], params["b"]
        _check_range(a >= b and 2 <= a <= n - 1 and 2 <= b <= n - 1, label, params)
        return _seq(G, [(el(1), 2 * n - 1), (el(a, 1), 1), (el(1 - a, 1), 1),
                        (el(b, 0, 1), 1), (el(1 - b, 0, 1), 1)])
    if label == "eta3":
        ds = params["d"]
        sigma = _dlist_sum(G, ds)
        _check_range(
            len(ds) == 2 * n + 1 and all(d in env.klein for d in ds)
            and sigma not in set(ds), label, params)
        pairs = [(combine(G, env.f3, d), 1) for d in ds]
        pairs += [(env.f2, 1), (env.f1, 1)]
        return _seq(G, pairs)
    if label == "s1":
        a, alpha, beta = params["a"], params["alpha"], params["beta"]
        _check_range(2 <= a <= n - 1 and 0 <= alpha <= n - 1 and 0 <= beta <= n - 1,
                     label, params)
        return _seq(G, [(zero(G), 2 * alpha + 1), (env.f2, 2 * n - 2 * alpha - 1),
                        (el(1), 2 * n - 1 - 2 * beta), (el(1, 1), 2 * beta + 1),
                        (el(a, 0, 1), 1), (el(1 - a, 1, 1), 1)])
    if label == "s2":
        a, b = params["a"], params["b"]
        _check_range(a >= b and 2 <= a <= n - 1 and 2 <= b <= n - 1, label, params)
        return _seq(G, [(zero(G), 2 * n - 1), (el(1), 2 * n - 1),
                        (el(a, 1), 1), (el(1 - a, 1), 1),
                        (el(b, 0, 1), 1), (el(1 - b, 0, 1), 1)])
    if label == "s3":
        alpha, beta, gamma = params["alpha"], params["beta"], params["gamma"]
        ds = params["d"]
        sigma = _dlist_sum(G, ds)
        _check_range(
            alpha + beta + gamma == n - 1
            and all(0 <= x <= n - 1 for x in (alpha, beta, gamma))
            and len(ds) == 2 * n + 1 and all(d in env.klein for d in ds)
            and sigma not in set(ds), label, params)
        pairs = [(zero(G), 2 * alpha + 1), (env.f1, 2 * beta + 1),
                 (env.f2, 2 * gamma + 1)]
        pairs += [(combine(G, env.f3, d), 1) for d in ds]
        return _seq(G, pairs)
    raise ValueError(f"unknown family label {label!r}")


def generate(witness: FamilyWitness, group: GroupSpec) -> Sequence:
    """The witness's closed-form sequence, translated when present."""
    label = witness.label
    if label in CYCLIC_ETA_LABELS + CYCLIC_S_LABELS:
        seq = _generate_cyclic(witness, group)
    elif label == "eta-n1":
        if group.orders != (2, 2, 2):
            raise UnsupportedShapeError("eta-n1 is the [2,2,2] special case")
        seq = Sequence.from_elements(
            group, (g for g in elements(group) if g != zero(group)))
    elif label == "s-n1":
        if group.orders != (2, 2, 2):
            raise UnsupportedShapeError("s-n1 is the [2,2,2] special case")
        seq = Sequence.from_elements(group, elements(group))
    else:
        basis = witness.basis if witness.basis is not None else standard_basis(group)
        env = _BasisEnv(group, basis)
        if label in ETA_LABELS + S_LABELS and env.n < 2:
            raise ValueError(f"family {label} requires n >= 2")
        seq = _generate_in_basis(label, env, witness.params)
    if witness.translation is not None:
        seq = seq.translate(witness.translation)
    return seq


def _generate_cyclic(witness: FamilyWitness, group: GroupSpec) -> Sequence:
    if len(group.orders) != 1:
        raise UnsupportedShapeError(f"{witness.label} needs a cyclic group")
    n = group.orders[0]
    p = witness.params
    label = witness.label
    if label == "cyc-eta-1":
        g = p["g"]
        _check_range(order_of(group, g) == n and n >= 3, label, p)
        return _seq(group, [(g, n - 1)])
    if label == "cyc-eta-2a":
        g = p["g"]
        _check_range(order_of(group, g) == n and n >= 3, label, p)
        return _seq(group, [(g, n - 2)])
    if label == "cyc-eta-2b":
        g = p["g"]
        _check_range(order_of(group, g) == n and n >= 3, label, p)
        return _seq(group, [(g, n - 3), (scale(group, 2, g), 1)])
    g, h = p["g"], p["h"]
    _check_range(order_of(group, combine(group, g, h, -1)) == n and n >= 3, label, p)
    if label == "cyc-s-1":
        return _seq(group, [(g, n - 1), (h, n - 1)])
    if label == "cyc-s-2a":
        return _seq(group, [(g, n - 1), (h, n - 2)])
    if label == "cyc-s-2b":
        two_h_minus_g = combine(group, scale(group, 2, h), g, -1)
        return _seq(group, [(g, n - 1), (h, n - 3), (two_h_minus_g, 1)])
    raise ValueError(f"unknown cyclic label {label!r}")


# --- witness enumeration ---------------------------------------------------


def _legal_params(label: str, env: _BasisEnv):
    """All legal parameter dicts of one family for the basis environment."""
    n = env.n
    arange = range(2, n)
    if label == "d1":
        for v1 in range(1, 2 * n + 2, 2):
            for v2 in range(v1, 2 * n + 2, 2):
                v3 = 2 * n + 1 - v1 - v2
                if v3 >= v2 and v3 % 2 == 1:
                    yield {"v3": v3, "v2": v2, "v1": v1}
    elif label == "d2":
        for v2 in range(1, 2 * n, 2):
            v3 = 2 * n - v2
            if v3 >= v2 and v3 % 2 == 1:
                for a in arange:
                    yield {"v3": v3, "v2": v2, "a": a}
    elif label == "d3":
        for a in arange:
            for b in range(a, n):
                c = 2 * n + 1 - a - b
                if b <= c <= 2 * n - 3 and c not in (n, n + 1):
                    yield {"a": a, "b": b, "c": c}
    elif label == "d4":
        for v in range(n):
            for a in arange:
                yield {"v": v, "a": a}
    elif label in ("d5", "eta2", "s2"):
        for a in arange:
            for b in range(2, a + 1):
                yield {"a": a, "b": b}
    elif label == "d6":
        target = combine(env.group, env.f1, env.f2)
        for ds in combinations_with_replacement(sorted(env.klein), 2 * n):
            if _dlist_sum(env.group, ds) == target:
                yield {"d": ds}
    elif label == "eta1":
        for v in range(n):
            for a in arange:
                yield {"v": v, "a": a}
    elif label == "eta3":
        for ds in combinations_with_replacement(sorted(env.klein), 2 * n + 1):
            if _dlist_sum(env.group, ds) not in set(ds):
                yield {"d": ds}
    elif label == "s1":
        for a in arange:
            for alpha in range(n):
                for beta in range(n):
                    yield {"a": a, "alpha": alpha, "beta": beta}
    elif label == "s3":
        dlists = [
            ds for ds in combinations_with_replacement(sorted(env.klein), 2 * n + 1)
            if _dlist_sum(env.group, ds) not in set(ds)
        ]
        for alpha in range(n):
            for beta in range(n - alpha):
                gamma = n - 1 - alpha - beta
                for ds in dlists:
                    yield {"alpha": alpha, "beta": beta, "gamma": gamma, "d": ds}
    else:
        raise ValueError(f"unknown family label {label!r}")


def family_mode(label: str) -> EquivalenceMode:
    if label in S_LABELS + ("s-n1",) + CYCLIC_S_LABELS:
        return EquivalenceMode.AUTOMORPHISM_TRANSLATION
    return EquivalenceMode.AUTOMORPHISM


def enumerate_family(group: GroupSpec, label: str) -> List[Sequence]:
    """Canonical representatives of every instance of one family.

    Instances are generated over a fixed standard basis (the full quantifier
    over bases is absorbed by closing under the problem's symmetry), then
    deduplicated as canonical forms.
    """
    mode = family_mode(label)
    if label in CYCLIC_ETA_LABELS + CYCLIC_S_LABELS:
        witnesses = _cyclic_witnesses(group, label)
    elif label in SPECIAL_LABELS:
        if group.orders != (2, 2, 2):
            return []
        witnesses = [FamilyWitness(label, None, {})]
    else:
        n = two_two_even_parameter(group)
        if label in ETA_LABELS + S_LABELS and n < 2:
            return []
        basis = standard_basis(group)
        env = _BasisEnv(group, basis)
        witnesses = (FamilyWitness(label, basis, p) for p in _legal_params(label, env))
    out = set()
    for w in witnesses:
        out.add(canonical_form(generate(w, group), mode))
    return sorted(out, key=lambda s: s.items)


def _cyclic_witnesses(group: GroupSpec, label: str):
    if len(group.orders) != 1 or group.orders[0] < 3:
        return
    n = group.orders[0]
    gens = [g for g in elements(group) if order_of(group, g) == n]
    if label in CYCLIC_ETA_LABELS:
        for g in gens:
            yield FamilyWitness(label, None, {"g": g})
        return
    for g in elements(group):
        for h in elements(group):
            if order_of(group, combine(group, g, h, -1)) == n:
                yield FamilyWitness(label, None, {"g": g, "h": h})


# --- classification --------------------------------------------------------


def _match_in_basis(seq: Sequence, env: _BasisEnv, label: str):
    """Parameter dicts under which seq equals the label's closed form.

    Parameters are read off the multiset structure where they are determined
    (multiplicities, coset decompositions); the residual existentials are
    tiny legal ranges, scanned directly. Every candidate is confirmed by
    regenerating and comparing, so a yielded dict is always a true witness.
    """
    G, n = env.group, env.n
    el, mult = env.el, seq.multiplicity

    def confirmed(params):
        try:
            return generate(FamilyWitness(label, env.basis, params), G) == seq
        except ValueError:
            return False

    candidates: List[dict] = []
    if label == "d1":
        candidates = [{"v3": mult(el(1)), "v2": mult(el(1, 1)),
                       "v1": mult(el(1, 0, 1))}]
    elif label == "d2":
        candidates = [{"v3": mult(el(1)), "v2": mult(el(1, 1)), "a": a}
                      for a in range(2, n)]
    elif label == "d3":
        candidates = []
        for a in range(2, n):
            for b in range(a, n):
                candidates.append({"a": a, "b": b, "c": 2 * n + 1 - a - b})
    elif label == "d4":
        v = mult(el(1, 1)) // 2
        candidates = [{"v": v, "a": a} for a in range(2, n)]
    elif label in ("d5", "eta2", "s2"):
        candidates = [{"a": a, "b": b}
                      for a in range(2, n) for b in range(2, a + 1)]
    elif label in ("d6", "eta3"):
        ds = []
        for x, m in seq.items:
            d = env.f3_coset(x)
            if d is not None:
                ds.extend([d] * m)
        candidates = [{"d": tuple(sorted(ds))}]
    elif label == "eta1":
        v = (mult(el(1, 1)) - 1) // 2
        candidates = [{"v": v, "a": a} for a in range(2, n)]
    elif label == "s1":
        alpha = (mult(zero(G)) - 1) // 2
        beta = (mult(el(1, 1)) - 1) // 2
        candidates = [{"a": a, "alpha": alpha, "beta": beta} for a in range(2, n)]
    elif label == "s3":
        alpha = (mult(zero(G)) - 1) // 2
        beta = (mult(env.f1) - 1) // 2
        gamma = (mult(env.f2) - 1) // 2
        ds = []
        for x, m in seq.items:
            d = env.f3_coset(x)
            if d is not None:
                ds.extend([d] * m)
        candidates = [{"alpha": alpha, "beta": beta, "gamma": gamma,
                       "d": tuple(sorted(ds))}]
    for params in candidates:
        if confirmed(params):
            yield params


def _required_lengths(problem: str, group: GroupSpec) -> Tuple[int, ...]:
    if problem in ("davenport-max", "eta-extremal", "s-extremal"):
        n = two_two_even_parameter(group)
        if problem == "davenport-max":
            return (2 * n + 2,)
        if problem == "eta-extremal":
            return (7,) if n == 1 else (2 * n + 3,)
        return (8,) if n == 1 else (4 * n + 2,)
    if problem in ("cyclic-eta", "cyclic-s"):
        if len(group.orders) != 1 or group.orders[0] < 3:
            raise UnsupportedShapeError(f"{problem} needs a cyclic group of order >= 3")
        n = group.orders[0]
        if problem == "cyclic-eta":
            return (n - 1, n - 2)
        return (2 * n - 2, 2 * n - 3)
    raise ValueError(f"unknown problem {problem!r}; one of {PROBLEMS}")


def _problem_labels(problem: str, group: GroupSpec, length: int) -> Tuple[str, ...]:
    if problem == "davenport-max":
        return D_LABELS
    if problem == "eta-extremal":
        n = two_two_even_parameter(group)
        return ("eta-n1",) if n == 1 else ETA_LABELS
    if problem == "s-extremal":
        n = two_two_even_parameter(group)
        return ("s-n1",) if n == 1 else S_LABELS
    n = group.orders[0]
    if problem == "cyclic-eta":
        return ("cyc-eta-1",) if length == n - 1 else ("cyc-eta-2a", "cyc-eta-2b")
    return ("cyc-s-1",) if length == 2 * n - 2 else ("cyc-s-2a", "cyc-s-2b")


def classify(seq: Sequence, problem: str, first_only: bool = False
             ) -> List[FamilyWitness]:
    """All witnesses (basis, parameters, translation) matching the sequence.

    An empty list means the relevant characterization asserts the sequence
    must contain the forbidden zero-sum; callers cross-check that with the
    engine. Deterministic order: bases as enumerated, translations
    lexicographic.
    """
    group = seq.group
    required = _required_lengths(problem, group)
    if seq.length not in required:
        raise WrongLengthError(
            f"{problem} needs length in {required} over {group.orders}, "
            f"got {seq.length}"
        )
    labels = _problem_labels(problem, group, seq.length)
    out: List[FamilyWitness] = []

    if problem in ("cyclic-eta", "cyclic-s"):
        for label in labels:
            for w in _cyclic_witnesses(group, label):
                if generate(w, group) == seq:
                    out.append(w)
                    if first_only:
                        return out
        return out

    n = two_two_even_parameter(group)
    if n == 1 and problem in ("eta-extremal", "s-extremal"):
        label = labels[0]
        witness = FamilyWitness(label, None, {})
        if problem == "s-extremal":
            for f in elements(group):
                if generate(witness, group).translate(f) == seq:
                    out.append(FamilyWitness(label, None, {}, translation=f))
                    if first_only:
                        return out
        elif generate(witness, group) == seq:
            out.append(witness)
        return out

    translations = (
        list(elements(group)) if problem == "s-extremal" else [None]
    )
    profile = (2, 2, group.orders[2])
    for basis in enumerate_bases(group, profile):
        env = _BasisEnv(group, basis)
        for f in translations:
            target = seq if f is None else seq.translate(negate(group, f))
            for label in labels:
                for params in _match_in_basis(target, env, label):
                    out.append(FamilyWitness(label, basis, params, translation=f))
                    if first_only:
                        return out
    return out


# --- corollaries and the filter lemma --------------------------------------


@dataclass(frozen=True)
class CTDecomposition:
    """-f + S = C * T with C = 0^(2u+1) f1^(2v) f2^(2w) of length exp(G)-1."""

    f: Element
    c_part: Sequence
    t_part: Sequence
    u: int
    v: int
    w: int
    f1: Optional[Element]
    f2: Optional[Element]


def decompose_CT(seq: Sequence) -> Optional[CTDecomposition]:
    """Split an exact-exponent extremal sequence, after a translation, into
    an order-2-supported block C of length exp(G)-1 and a tail T of length
    one below the short-zero-sum threshold with no short zero-sum.

    None only if the exhaustive search over translations and C-shapes fails,
    which would refute the decomposition property.
    """
    from .engine import has_zero_sum

    group = seq.group
    n = two_two_even_parameter(group)
    if n < 2:
        raise UnsupportedShapeError("decompose_CT needs shape [2, 2, 2n], n >= 2")
    if seq.length != 4 * n + 2:
        raise WrongLengthError(
            f"decompose_CT needs the extremal length {4 * n + 2}, got {seq.length}"
        )
    order2 = [g for g in elements(group) if order_of(group, g) == 2]
    short = LengthSet.short()
    for f in elements(group):
        shifted = seq.translate(negate(group, f))
        zeros = shifted.multiplicity(zero(group))
        if not zeros:
            continue
        for u in range(n):
            rest = n - 1 - u
            if 2 * u + 1 > zeros:
                break
            for v in range(rest + 1):
                w = rest - v
                x_opts = [None] if v == 0 else [
                    x for x in order2 if shifted.multiplicity(x) >= 2 * v
                ]
                for x in x_opts:
                    y_opts = [None] if w == 0 else [
                        y for y in order2
                        if y != x and shifted.multiplicity(y) >= 2 * w
                    ]
                    for y in y_opts:
                        pairs = [(zero(group), 2 * u + 1)]
                        if v:
                            pairs.append((x, 2 * v))
                        if w:
                            pairs.append((y, 2 * w))
                        c_part = Sequence(group, pairs)
                        t_part = shifted.divide(c_part)
                        if not has_zero_sum(t_part, short):
                            return CTDecomposition(f, c_part, t_part, u, v, w, x, y)
    return None


@dataclass(frozen=True)
class FilterLemmaResult:
    hypotheses_hold: bool
    conclusion_holds: bool


def check_filter_lemma(seq: Sequence, c_prime: Sequence, f: Element
                       ) -> FilterLemmaResult:
    """Check the exact-exponent filter: a long-enough subsequence whose
    partial sums track multiples of f forces a zero-sum of length exp(G)."""
    from .engine import has_zero_sum, sigma_L
    from .search import constant_value

    group = seq.group
    if not c_prime.divides(seq):
        raise NonDivisorError("C' must divide S")
    eta = constant_value(group, LengthSet.short())
    hypotheses = seq.length == eta + group.exponent - 1
    hypotheses = hypotheses and c_prime.length >= (group.exponent - 1) // 2
    if hypotheses:
        for j in range(1, c_prime.length + 1):
            if scale(group, j, f) not in sigma_L(c_prime, LengthSet.explicit([j])):
                hypotheses = False
                break
    conclusion = has_zero_sum(seq, LengthSet.exact_exponent())
    return FilterLemmaResult(hypotheses, conclusion)


@dataclass(frozen=True)
class HeightProfile:
    min_height: int
    attaining: Sequence


def height_profile(seqs: Iterable[Sequence]) -> HeightProfile:
    """Minimum height over a stream with one attaining sequence."""
    best: Optional[Sequence] = None
    best_h: Optional[int] = None
    for s in seqs:
        h = s.height()
        if best_h is None or h < best_h:
            best, best_h = s, h
    if best is None:
        raise ValueError("empty stream has no height profile")
    return HeightProfile(best_h, best)


def expected_min_height(n: int) -> int:
    """The exact lower bound for the height of exact-exponent extremal
    sequences over [2, 2, 2n]."""
    if n % 3 == 0:
        return (2 * n + 3) // 3
    if n % 3 == 1:
        return (2 * n + 1) // 3
    return (2 * n + 5) // 3


def min_height_attaining_sequence(group: GroupSpec) -> Sequence:
    """The explicit extremal sequence attaining the height bound."""
    n = two_two_even_parameter(group)
    if n < 2:
        raise UnsupportedShapeError("height witness needs n >= 2")
    if n % 3 == 0:
        alpha, beta, gamma = n // 3, n // 3, (n - 3) // 3
    elif n % 3 == 1:
        alpha = beta = gamma = (n - 1) // 3
    else:
        alpha, beta, gamma = (n + 1) // 3, (n - 2) // 3, (n - 2) // 3
    basis = standard_basis(group)
    env = _BasisEnv(group, basis)
    f1, f2, f3 = env.f1, env.f2, env.f3
    f12 = combine(group, f1, f2)
    return Sequence(group, [
        (zero(group), 2 * alpha + 1),
        (f1, 2 * beta + 1),
        (f2, 2 * gamma + 1),
        (combine(group, f3, f1), 2 * alpha + 1),
        (combine(group, f3, f2), 2 * beta + 1),
        (combine(group, f3, f12), 2 * gamma + 1),
    ])
