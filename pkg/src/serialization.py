#!/usr/bin/env python3
"""
File Formats for the Monoid Workbench

Pydantic schemas for monoid, hom, point and generalized point files, JSON
output helpers for checker results and constructions, and the JSON-lines
enumeration stream.

Monoid file:  {"order": n, "identity": e, "table": [[...], ...]}
Hom file:     {"dom": <monoid or path>, "cod": <monoid or path>, "map": [...]}
Point file:   {"f": <hom>, "s": <hom>}
GP file:      {"f": <hom>, "g": <hom>}

Output always carries the identity at index 0.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

from monoid_core import Hom, LimitCone, Monoid, validate_monoid
from monoid_enumeration import identity_swap
from points import CheckResult, GeneralizedPoint, Point

logger = logging.getLogger(__name__)

GENERATOR = "monoid-workbench"
GENERATOR_VERSION = "1.0.0"


class MonoidModel(BaseModel):
    """Monoid file schema"""
    order: int = Field(..., ge=1)
    identity: int = 0
    table: List[List[int]]

    @model_validator(mode="after")
    def _square_table(self):
        if len(self.table) != self.order or any(len(row) != self.order for row in self.table):
            raise ValueError(f"table must be {self.order}x{self.order}")
        if not 0 <= self.identity < self.order:
            raise ValueError(f"identity {self.identity} outside [0, {self.order})")
        return self

    def to_monoid(self, name: Optional[str] = None) -> Monoid:
        return validate_monoid(self.table, self.identity, name=name)


class HomModel(BaseModel):
    """Hom file schema; dom and cod are inline monoids or paths to monoid files"""
    dom: Union[MonoidModel, str]
    cod: Union[MonoidModel, str]
    map: List[int]

    def to_hom(self, base_dir: Path = Path(".")) -> Hom:
        return Hom(_resolve_monoid(self.dom, base_dir), _resolve_monoid(self.cod, base_dir), self.map)


class PointModel(BaseModel):
    f: HomModel
    s: HomModel

    def to_point(self, base_dir: Path = Path(".")) -> Point:
        return Point(self.f.to_hom(base_dir), self.s.to_hom(base_dir))


class GPModel(BaseModel):
    f: HomModel
    g: HomModel

    def to_gp(self, base_dir: Path = Path(".")) -> GeneralizedPoint:
        return GeneralizedPoint(self.f.to_hom(base_dir), self.g.to_hom(base_dir))


class CheckResultModel(BaseModel):
    holds: bool
    witness: Optional[Any] = None


def _resolve_monoid(ref: Union[MonoidModel, str], base_dir: Path) -> Monoid:
    if isinstance(ref, MonoidModel):
        return ref.to_monoid()
    return load_monoid(base_dir / ref)


def _read_json(path: Union[str, Path]) -> Dict:
    with open(path, "r") as f:
        return json.load(f)


def load_monoid(path: Union[str, Path]) -> Monoid:
    return MonoidModel.model_validate(_read_json(path)).to_monoid(name=Path(path).stem)


def load_hom(path: Union[str, Path]) -> Hom:
    path = Path(path)
    return HomModel.model_validate(_read_json(path)).to_hom(path.parent)


def load_point(path: Union[str, Path]) -> Point:
    path = Path(path)
    return PointModel.model_validate(_read_json(path)).to_point(path.parent)


def load_gp(path: Union[str, Path]) -> GeneralizedPoint:
    path = Path(path)
    return GPModel.model_validate(_read_json(path)).to_gp(path.parent)


def _relabeled_rows(M: Monoid) -> Tuple[List[int], List[List[int]]]:
    perm = identity_swap(M)
    rows = [[0] * M.order for _ in M.elements]
    for a in M.elements:
        for b in M.elements:
            rows[perm[a]][perm[b]] = perm[M.rows[a][b]]
    return perm, rows


def monoid_to_dict(M: Monoid) -> Dict:
    _, rows = _relabeled_rows(M)
    return {"order": M.order, "identity": 0, "table": rows}


def hom_to_dict(h: Hom) -> Dict:
    p_dom = identity_swap(h.dom)
    p_cod = identity_swap(h.cod)
    mapping = [0] * h.dom.order
    for a in h.dom.elements:
        mapping[p_dom[a]] = p_cod[h(a)]
    return {"dom": monoid_to_dict(h.dom), "cod": monoid_to_dict(h.cod), "map": mapping}


def point_to_dict(p: Point) -> Dict:
    return {"f": hom_to_dict(p.f), "s": hom_to_dict(p.s)}


def gp_to_dict(gp: GeneralizedPoint) -> Dict:
    return {"f": hom_to_dict(gp.f), "g": hom_to_dict(gp.g)}


def _relabeled_pairs(cone: LimitCone) -> List[List[int]]:
    p_first = identity_swap(cone.first.cod)
    p_second = identity_swap(cone.second.cod)
    p_carrier = identity_swap(cone.carrier)
    pairs = [None] * len(cone.pairs)
    for i, (a, x) in enumerate(cone.pairs):
        pairs[p_carrier[i]] = [p_first[a], p_second[x]]
    return pairs


def cone_to_dict(cone: LimitCone) -> Dict:
    """Carrier table, both projections and the pairing index -> (first, second)"""
    return {
        "carrier": monoid_to_dict(cone.carrier),
        "first": hom_to_dict(cone.first),
        "second": hom_to_dict(cone.second),
        "pairs": _relabeled_pairs(cone),
    }


def canonical_point_to_dict(point: Point, cone: LimitCone) -> Dict:
    return {"point": point_to_dict(point), "pullback": cone_to_dict(cone)}


def pulled_back_gp_to_dict(pulled) -> Dict:
    return {
        "original": gp_to_dict(pulled.original),
        "along": hom_to_dict(pulled.along),
        "result": gp_to_dict(pulled.result),
        "a_pullback": cone_to_dict(pulled.a_cone),
        "c_pullback": cone_to_dict(pulled.c_cone),
    }


def relabel_witness(witness: Optional[Dict], carriers: Dict[str, Union[Monoid, List[Monoid]]]) -> Optional[Dict]:
    """
    Move witness element indices into the identity-at-0 labeling of every
    other output. carriers maps a witness field to the monoid its indices live
    in; a list of monoids relabels a positional field entry by entry. Lists of
    elements under a single monoid come back sorted.
    """
    if not witness:
        return witness
    relabeled = dict(witness)
    for field, carrier in carriers.items():
        if field not in relabeled:
            continue
        value = relabeled[field]
        if isinstance(carrier, list):
            relabeled[field] = [identity_swap(M)[v] for M, v in zip(carrier, value)]
        elif isinstance(value, list):
            perm = identity_swap(carrier)
            relabeled[field] = sorted(perm[v] for v in value)
        else:
            relabeled[field] = identity_swap(carrier)[value]
    return relabeled


def check_result_to_dict(result: CheckResult,
                         carriers: Optional[Dict[str, Union[Monoid, List[Monoid]]]] = None) -> Dict:
    witness = relabel_witness(result.witness, carriers) if carriers else result.witness
    return CheckResultModel(holds=result.holds, witness=witness).model_dump()


def dumps(payload: Any) -> str:
    """Deterministic single-line JSON"""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def stream_header(params: Dict) -> Dict:
    return {"generator": GENERATOR, "version": GENERATOR_VERSION, "params": params}


def write_monoid_stream(path: Union[str, Path], monoids: Iterable[Monoid], params: Dict) -> int:
    """Header line then one monoid per line; returns the monoid count"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w") as f:
        f.write(dumps(stream_header(params)) + "\n")
        for M in monoids:
            f.write(dumps(monoid_to_dict(M)) + "\n")
            count += 1
    return count


def read_monoid_stream(path: Union[str, Path]) -> Tuple[Dict, List[Monoid]]:
    with open(path, "r") as f:
        lines = [line for line in f if line.strip()]
    if not lines:
        raise ValueError(f"{path} is empty")
    header = json.loads(lines[0])
    if header.get("generator") != GENERATOR:
        raise ValueError(f"{path} was not written by {GENERATOR}")
    monoids = [MonoidModel.model_validate_json(line).to_monoid() for line in lines[1:]]
    return header, monoids
