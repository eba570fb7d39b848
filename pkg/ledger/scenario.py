"""
Sectioned scenario files.

    # comment
    [scenario]
    name = selmer_difference
    kind = wiles
    claim = selmer_dual_selmer_difference
    expected = 1

    [global]
    module = Ad
    h0_global = 1
    h0_global_dual = 0

    [place]
    label = p
    dim_L = 4
    h0 = 2

    [flags]
    zeta_not_cyclotomic = true

    [params]
    case = split

[scenario] is required. [global] and at least one [place] are required for
the wiles kind, [params] carries the inputs of the other kinds. [place] may
repeat; every other section appears at most once.
"""
import re
from pathlib import Path
from typing import Dict, List, Tuple, Union

from loguru import logger

from ledger.wiles import (
    contributions,
    euler_h1_at_p,
    fact_table,
    tangent_dim_p,
    wiles_difference,
)
from models.api import LedgerResponse, PlaceContribution
from models.models import PlaceRecord, ScenarioFile, ScenarioKind, SelmerScenario

_SECTION = re.compile(r"^\[([a-z_]+)\]$")
_ENTRY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_SECTIONS = ("scenario", "global", "place", "flags", "params")
_BOOLEANS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {value!r}")


def _parse_ints(value: str, key: str) -> List[int]:
    return [_parse_int(part.strip(), key) for part in value.split(",") if part.strip()]


def _sections(text: str) -> List[Tuple[str, Dict[str, str]]]:
    sections: List[Tuple[str, Dict[str, str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _SECTION.match(line)
        if header:
            name = header.group(1)
            if name not in _SECTIONS:
                raise ValueError(f"line {lineno}: unknown section [{name}]")
            if name != "place" and any(s == name for s, _ in sections):
                raise ValueError(f"line {lineno}: section [{name}] appears twice")
            sections.append((name, {}))
            continue
        entry = _ENTRY.match(line)
        if not entry:
            raise ValueError(f"line {lineno}: expected key = value, got {line!r}")
        if not sections:
            raise ValueError(f"line {lineno}: entry outside of a section")
        key, value = entry.group(1), entry.group(2).strip()
        body = sections[-1][1]
        if key in body:
            raise ValueError(f"line {lineno}: duplicate key {key}")
        body[key] = value
    return sections


def _require(body: Dict[str, str], key: str, section: str) -> str:
    if key not in body:
        raise ValueError(f"section [{section}] is missing {key}")
    return body[key]


def parse_scenario(text: str) -> ScenarioFile:
    """
    Parse a scenario file.

    Raises:
        ValueError: On a malformed line, an unknown section or kind, or a
            missing required key.
    """
    sections = _sections(text)
    by_name = {name: body for name, body in sections if name != "place"}
    places = [body for name, body in sections if name == "place"]
    if "scenario" not in by_name:
        raise ValueError("scenario file has no [scenario] section")

    header = by_name["scenario"]
    kind_text = _require(header, "kind", "scenario")
    try:
        kind = ScenarioKind(kind_text)
    except ValueError:
        raise ValueError(
            f"Unsupported kind {kind_text}. Try one of the following: "
            + ", ".join(k.value for k in ScenarioKind)
        )

    scenario = None
    if kind == ScenarioKind.wiles:
        if "global" not in by_name or not places:
            raise ValueError("a wiles scenario needs a [global] section and [place] sections")
        glob = by_name["global"]
        scenario = SelmerScenario(
            module=glob.get("module", "Ad"),
            h0_global=_parse_int(_require(glob, "h0_global", "global"), "h0_global"),
            h0_global_dual=_parse_int(_require(glob, "h0_global_dual", "global"), "h0_global_dual"),
            places=[
                PlaceRecord(
                    label=_require(body, "label", "place"),
                    dim_L=_parse_int(_require(body, "dim_L", "place"), "dim_L"),
                    h0=_parse_int(_require(body, "h0", "place"), "h0"),
                )
                for body in places
            ],
            flags={key: _parse_flag(value, key) for key, value in by_name.get("flags", {}).items()},
        )
    elif places:
        raise ValueError(f"[place] sections are only allowed in wiles scenarios, not {kind.value}")

    return ScenarioFile(
        name=_require(header, "name", "scenario"),
        kind=kind,
        claim=header.get("claim", _require(header, "name", "scenario")),
        expected=_parse_ints(_require(header, "expected", "scenario"), "expected"),
        scenario=scenario,
        params=by_name.get("params", {}),
    )


def _parse_flag(value: str, key: str) -> bool:
    if value.lower() not in _BOOLEANS:
        raise ValueError(f"flag {key} must be true or false, got {value!r}")
    return _BOOLEANS[value.lower()]


def load_scenario(path: Union[str, Path]) -> ScenarioFile:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def _param(file: ScenarioFile, key: str) -> str:
    if key not in file.params:
        raise ValueError(f"{file.kind.value} scenario {file.name} is missing parameter {key}")
    return file.params[key]


def run_scenario(file: ScenarioFile) -> LedgerResponse:
    """Evaluate a parsed scenario and compare against its expected values."""
    response = LedgerResponse(
        name=file.name, kind=file.kind.value, claim=file.claim, value=[], expected=file.expected, passed=False
    )
    match file.kind:
        case ScenarioKind.wiles:
            response.value = [wiles_difference(file.scenario)]
            response.contributions = [
                PlaceContribution(label=place.label, dim_L=place.dim_L, h0=place.h0, contribution=c)
                for place, c in contributions(file.scenario)
            ]
        case ScenarioKind.tangent_p:
            if "h0_ad0" in file.params:
                dims = tangent_dim_p(_parse_int(file.params["h0_ad0"], "h0_ad0"))
            else:
                dims = tangent_dim_p(_param(file, "case"))
            response.tangent = dims
            response.value = [dims.h1_u, dims.dim_n_tilde_p, dims.h0_ad, dims.h1_u_tilde]
        case ScenarioKind.euler_p:
            response.value = [
                euler_h1_at_p(*(_parse_int(_param(file, key), key) for key in ("h0", "h2", "dim")))
            ]
        case ScenarioKind.fact_table:
            p, v = (_parse_int(_param(file, key), key) for key in ("p", "v"))
            f = _parse_int(file.params.get("f", "1"), "f")
            response.value = [n for dims in fact_table(p, v, f) for n in (dims.h0, dims.h1, dims.h2)]
        case _:
            raise ValueError(f"Unsupported kind {file.kind}")
    response.passed = response.value == file.expected
    if not response.passed:
        logger.warning(f"{file.name}: got {response.value}, expected {file.expected}")
    return response


def scenario_paths(directory: Union[str, Path]) -> List[Path]:
    """Scenario files of a directory in name order."""
    return sorted(Path(directory).glob("*.scn"))
