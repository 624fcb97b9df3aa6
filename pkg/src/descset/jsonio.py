"""Tagged JSON for every value the command line reads or prints.

Records are ``{"type": ClassName, field: value, ...}``.  Points are
``{"prefix": ..., "period": ...}``, fractions are strings like ``"1/3"``,
ordinals are ``{"type": "Ordinal", "cnf": ..., "text": ...}`` inside records.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from . import cantor, catalog, convergence, lftrees, rank, reductions
from . import trees as tr
from .ordinals import Ordinal, from_json as ord_from_json, from_text, to_json as ord_to_json, to_text

SCHEMA = "v1"

_CLASSES = [
    tr.Empty, tr.Single, tr.Chain, tr.Stem, tr.Join, tr.FullBranch, tr.OmegaJoin,
    tr.ChainRule, tr.StemRule, tr.ConstRule,
    cantor.Cylinder, cantor.Finite, cantor.Naturals, cantor.NodeSet, cantor.Siblings,
    cantor.Affine, cantor.Union, cantor.Restrict, cantor.LongWords, cantor.Above, cantor.Drop,
    catalog.PlusStep, catalog.MinusStep, catalog.NodeInd, catalog.PointInd, catalog.Const, catalog.Zero,
    catalog.NodeIndicatorsByH, catalog.SplitCantorCanonical, catalog.FiniteTableWithTail,
    catalog.Interval,
    rank.Leaf, rank.Apex, rank.Repeat, rank.Cycle, rank.Ramp, rank.MultiComponent,
    convergence.Converges, convergence.Diverges,
    lftrees.TNode, lftrees.SNode, lftrees.Caps,
    reductions.DecidablePointSet, reductions.HCoding, reductions.AffineHCoding,
]
REGISTRY = {c.__name__: c for c in _CLASSES}


class DecodeError(ValueError):
    pass


def encode(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Ordinal):
        return {"type": "Ordinal", "cnf": ord_to_json(obj), "text": to_text(obj)}
    if isinstance(obj, cantor.Point):
        return {"prefix": obj.prefix, "period": obj.period}
    if isinstance(obj, cantor.ClopenSet):
        return {"type": "ClopenSet", "words": sorted(obj.words, key=lambda w: (len(w), w))}
    if isinstance(obj, tr.FinTree):
        return {"type": "FinTree", "nodes": [list(n) for n in obj]}
    if isinstance(obj, catalog.Region):
        return {"type": "Region", "intervals": [encode(iv) for iv in obj.intervals]}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, frozenset):
        return sorted(encode(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if dataclasses.is_dataclass(obj) and type(obj).__name__ in REGISTRY:
        out = {"type": type(obj).__name__}
        for f in dataclasses.fields(obj):
            if f.init:
                out[f.name] = encode(getattr(obj, f.name))
        return out
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(obj):
    if isinstance(obj, list):
        return tuple(decode(x) for x in obj)
    if not isinstance(obj, dict):
        return obj
    kind = obj.get("type")
    if kind is None or kind == "Point":
        if set(obj) - {"type"} == {"prefix", "period"}:
            try:
                return cantor.Point(obj["prefix"], obj["period"])
            except (ValueError, TypeError) as e:
                raise DecodeError(str(e)) from None
        raise DecodeError("record without a type tag")
    try:
        if kind == "Ordinal":
            if "cnf" in obj:
                return ord_from_json(obj["cnf"])
            return from_text(obj["text"])
        if kind == "ClopenSet":
            return cantor.ClopenSet(frozenset(obj["words"]))
        if kind == "FinTree":
            return tr.FinTree.from_nodes(obj["nodes"])
        if kind == "Region":
            return catalog.Region.build(decode(obj["intervals"]))
        cls = REGISTRY[kind]
    except KeyError as e:
        raise DecodeError(f"unknown type or missing field: {e}") from None
    names = {f.name for f in dataclasses.fields(cls) if f.init}
    extra = set(obj) - names - {"type"}
    if extra:
        raise DecodeError(f"unexpected fields for {kind}: {sorted(extra)}")
    kwargs = {k: decode(v) for k, v in obj.items() if k != "type"}
    if kind == "TNode" and "t" in kwargs:
        kwargs["t"] = tuple(frozenset(F) for F in kwargs["t"])
    if kind == "Ramp" and isinstance(kwargs.get("limit"), int):
        raise DecodeError("ramp limit must be a limit ordinal")
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise DecodeError(str(e)) from None


def loads(text: str):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DecodeError(f"malformed JSON: {e}") from None
    return decode(raw)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def envelope(**fields) -> dict:
    out = {"schema": SCHEMA}
    out.update({k: encode(v) for k, v in fields.items()})
    return out
