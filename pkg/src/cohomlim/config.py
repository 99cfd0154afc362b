"""Configuration files: named groups, actions, inverse systems, filtrations.

The format is YAML, so plain JSON works too.  Example::

    budget: 1000000
    groups:
      klein: "product:(cyclic:2,cyclic:2)"
    actions:
      inv23: {g: "cyclic:2", a: "cyclic:3", kind: inversion}
      inv28: {g: "cyclic:2", a: "cyclic:8", kind: inversion}
      conj_s3: {g: "symmetric:3", a: "symmetric:3", kind: conjugation}
    filtrations:
      z8_2adic: {action: inv28, chain: {orders: [8, 4, 2, 1]}}
    systems:
      two_adic:
        g: "cyclic:2"
        tower:
          - {a: "cyclic:8", action: trivial}
          - {a: "cyclic:4", action: trivial}
          - {a: "cyclic:2", action: trivial}
        maps: [reduce, reduce]
      s3_derived: {derived: conj_s3}
      z8_filtered: {filtration: z8_2adic}

Group references are either names from ``groups`` or constructor strings
(``cyclic:n``, ``dihedral:n``, ``symmetric:n``, ``product:(X,Y)``) or
explicit ``{order, mul}`` tables.  Action ``kind`` is ``trivial``,
``inversion``, ``conjugation``, ``{conjugate_by: x}`` (cyclic G, with s
acting as conjugation by x^s) or ``{table: [[...]]}``.  Transition maps are
``reduce`` (cyclic reduction mod the target order), ``identity`` or
``{image: [...]}``.  Besides towers, a system may be given over an
arbitrary finite directed poset as ``{g, objects: [...], leq: [[...]],
maps: [[r, t, map], ...]}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from .actions import (
    GAction,
    conjugation_action,
    inversion_action,
    trivial_action,
    validate_action,
)
from .errors import ParseError, UnknownReference, ValidationError
from .filtrations import Filtration, chain_from_orders, derived_tower, filtration_tower, make_filtration
from .groups import FiniteGroup, derived_series, group_from_spec, make_cyclic, make_hom
from .systems import InverseSystem, make_system, make_tower, validate_poset, validate_system

__all__ = ["Config", "parse_config", "load_config", "config_to_dict"]


@dataclass
class Config:
    groups: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    filtrations: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    budget: int | None = None
    format: str = "json"
    raw: dict = field(default_factory=dict, repr=False)

    def is_empty(self) -> bool:
        return not (self.groups or self.actions or self.systems or self.filtrations)

    def action(self, name) -> GAction:
        try:
            return self.actions[name]
        except KeyError:
            raise UnknownReference(name, "action") from None

    def system(self, name) -> InverseSystem:
        try:
            return self.systems[name]
        except KeyError:
            raise UnknownReference(name, "system") from None


class _Resolver:
    def __init__(self, raw):
        self.raw = raw
        self.groups = {}
        self.cache = {}

    def group(self, ref) -> FiniteGroup:
        if isinstance(ref, dict):
            return group_from_spec(ref)
        key = str(ref)
        if key in self.groups:
            return self.groups[key]
        if key in self.cache:
            return self.cache[key]
        try:
            g = group_from_spec(key)
        except ValueError:
            raise UnknownReference(key, "group") from None
        # identical constructor strings share one object
        self.cache[key] = g
        return g

    def action(self, g, a, kind, name="") -> GAction:
        if isinstance(kind, dict):
            if "conjugate_by" in kind:
                return _conjugate_by(g, a, int(kind["conjugate_by"]), name)
            if "table" not in kind:
                raise ValidationError(detail=f"action kind needs a table: {kind!r}")
            return validate_action(g, a, kind["table"], name)
        if kind == "trivial":
            return trivial_action(g, a)
        if kind == "inversion":
            return inversion_action(g, a)
        if kind == "conjugation":
            return conjugation_action(g, a)
        raise ValidationError(detail=f"unknown action kind {kind!r}")


def _conjugate_by(g: FiniteGroup, a: FiniteGroup, x: int, name) -> GAction:
    # cyclic G = <1>: the element s acts as conjugation by x^s
    if not np.array_equal(g.mul, make_cyclic(g.order, cap=g.order).mul):
        raise ValidationError(detail="conjugate_by needs a cyclic acting group")
    if not 0 <= x < a.order:
        raise ValidationError(x, detail=f"conjugate_by element {x} not in A")
    table = []
    for s in g.elements:
        y = a.power(x, s)
        table.append([a.m(a.m(y, z), int(a.inv[y])) for z in a.elements])
    return validate_action(g, a, table, name)


def _transition(src: FiniteGroup, dst: FiniteGroup, spec):
    if isinstance(spec, dict):
        return make_hom(src, dst, spec["image"])
    if spec == "identity":
        return make_hom(src, dst, list(src.elements))
    if spec == "reduce":
        for grp in (src, dst):
            if not np.array_equal(grp.mul, make_cyclic(grp.order, cap=grp.order).mul):
                raise ValidationError(detail="reduce needs cyclic source and target")
        return make_hom(src, dst, [x % dst.order for x in src.elements])
    raise ValidationError(detail=f"unknown transition map {spec!r}")


def _chain(cfg, act, spec):
    if spec == "derived" or (isinstance(spec, dict) and spec.get("derived")):
        return None
    if isinstance(spec, dict) and "orders" in spec:
        return chain_from_orders(act.a, spec["orders"])
    if isinstance(spec, list):
        return spec
    raise ValidationError(detail=f"bad filtration chain {spec!r}")


def load_config(raw) -> Config:
    """Resolve a parsed mapping into validated objects."""
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError(1, "top level must be a mapping")
    res = _Resolver(raw)
    cfg = Config(raw=raw, budget=raw.get("budget"), format=raw.get("format", "json"))
    for name, spec in (raw.get("groups") or {}).items():
        g = group_from_spec(spec)
        res.groups[str(name)] = g
        cfg.groups[str(name)] = g
    for name, spec in (raw.get("actions") or {}).items():
        g = res.group(spec["g"])
        a = res.group(spec["a"])
        cfg.actions[str(name)] = res.action(g, a, spec.get("kind", "trivial"), str(name))
    for name, spec in (raw.get("filtrations") or {}).items():
        act = cfg.action(spec["action"])
        chain = _chain(cfg, act, spec.get("chain", "derived"))
        if chain is None:
            tower = derived_tower(act, name=str(name))
            series = derived_series(act.a)
            filt = Filtration(act.a, tuple(series[1:] or series))
        else:
            filt = make_filtration(act.a, chain)
            tower = filtration_tower(act, filt, name=str(name))
        cfg.filtrations[str(name)] = (spec["action"], filt, tower)
    for name, spec in (raw.get("systems") or {}).items():
        cfg.systems[str(name)] = _system(cfg, res, str(name), spec)
    return cfg


def _system(cfg, res, name, spec):
    if "derived" in spec:
        return validate_system(derived_tower(cfg.action(spec["derived"]), name=name))
    if "filtration" in spec:
        key = spec["filtration"]
        if key not in cfg.filtrations:
            raise UnknownReference(key, "filtration")
        return validate_system(cfg.filtrations[key][2])
    g = res.group(spec["g"])

    def level(entry):
        if isinstance(entry, str):
            act = cfg.action(entry)
            if not act.g.same_table(g):
                raise ValidationError(detail=f"action {entry!r} has a different acting group")
            return act
        a = res.group(entry["a"])
        kind = entry.get("action", "trivial")
        if isinstance(kind, str) and kind in cfg.actions:
            return cfg.actions[kind]
        return res.action(g, a, kind)

    if "tower" in spec:
        objects = [level(e) for e in spec["tower"]]
        specs = spec.get("maps", ["reduce"] * (len(objects) - 1))
        if len(specs) != len(objects) - 1:
            raise ValidationError(detail=f"system {name!r}: a tower of k levels needs k-1 maps")
        maps = [_transition(objects[i].a, objects[i + 1].a, m) for i, m in enumerate(specs)]
        return validate_system(make_tower(objects, maps, name=name))
    if "objects" in spec:
        objects = [level(e) for e in spec["objects"]]
        poset = validate_poset(spec["leq"])
        maps = {}
        for r, t, m in spec.get("maps", []):
            maps[(int(r), int(t))] = _transition(objects[r].a, objects[t].a, m)
        return validate_system(make_system(poset, objects, maps, name=name))
    raise ValidationError(detail=f"system {name!r} needs tower, objects, derived or filtration")


def parse_config(path) -> Config:
    """Read, parse and fully validate a config file."""
    with open(path) as fh:
        text = fh.read()
    return parse_config_text(text)


def parse_config_text(text) -> Config:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None) or getattr(e, "context_mark", None)
        line = mark.line + 1 if mark is not None else 0
        raise ParseError(line, str(getattr(e, "problem", e))) from None
    try:
        return load_config(raw)
    except (KeyError, TypeError) as e:
        raise ParseError(0, f"missing or malformed field: {e}") from None


def _action_dict(act: GAction) -> dict:
    return {"g": act.g.to_json(), "a": act.a.to_json(), "kind": {"table": act.table.tolist()}}


def config_to_dict(cfg: Config) -> dict:
    """Fully explicit form of a config: every group and action as tables.

    Systems built from filtrations or derived series are kept as references,
    since their canonical maps from A are recomputed on load.
    """
    out = {}
    if cfg.budget is not None:
        out["budget"] = cfg.budget
    out["groups"] = {name: g.to_json() for name, g in cfg.groups.items()}
    out["actions"] = {name: _action_dict(act) for name, act in cfg.actions.items()}
    raw_f = cfg.raw.get("filtrations") or {}
    out["filtrations"] = {}
    for name, (act_name, filt, _) in cfg.filtrations.items():
        chain = raw_f[name].get("chain", "derived")
        if chain != "derived" and not (isinstance(chain, dict) and chain.get("derived")):
            chain = [n.sorted() for n in filt.chain]
        out["filtrations"][name] = {"action": act_name, "chain": chain}
    out["systems"] = {}
    raw_s = cfg.raw.get("systems") or {}
    for name, sys in cfg.systems.items():
        spec = raw_s.get(name, {})
        if "derived" in spec or "filtration" in spec:
            out["systems"][name] = dict(spec)
            continue
        p = sys.poset
        out["systems"][name] = {
            "g": sys.g.to_json(),
            "objects": [{"a": o.a.to_json(), "action": {"table": o.table.tolist()}} for o in sys.objects],
            "leq": p.leq.astype(int).tolist(),
            "maps": [
                [r, t, {"image": list(m.image)}]
                for (r, t), m in sorted(sys.transitions.items())
                if r != t
            ],
        }
    return out
