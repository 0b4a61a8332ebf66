"""Content-addressed JSON artifacts and their re-verification."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .catalog import FamilySpec
from .certificates import (
    NonIsoCertificate,
    certify_danielewski_noniso,
    certify_fermat_noniso,
    certify_fiber_distinct,
)
from .fibrations import FibrationSpec, degenerate_fibers
from .scan import scan_family
from .varieties import MonomialRingMap, verify_map

OUTPUT_ENV = "LAURENT_CYLINDERS_OUT"
DEFAULT_OUTPUT = "artifacts"


class ArtifactError(ValueError):
    """The file is not an artifact this package wrote."""


def output_dir(override: str | os.PathLike | None = None) -> Path:
    return Path(override or os.environ.get(OUTPUT_ENV) or DEFAULT_OUTPUT)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def content_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def write_json(obj, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
    os.replace(tmp, path)
    return path


def store_artifact(obj, prefix: str, directory: str | os.PathLike | None = None) -> Path:
    """Write ``obj`` as ``<prefix>-<sha256[:16]>.json``; identical content lands on the same file."""
    path = output_dir(directory) / f"{prefix}-{content_hash(obj)[:16]}.json"
    if not path.exists():
        write_json(obj, path)
    return path


def load_json(path: str | os.PathLike):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def artifact_verdict(data: dict) -> str:
    """The verdict stored in an artifact."""
    if "schema_version" in data:
        return data["verdict"]
    if data.get("artifact") == "iso-recipe":
        return data["report"]["verdict"]
    if data.get("artifact") == "fiber-report":
        return "computed"
    if data.get("artifact") == "scan":
        return f"counterexamples {data['counterexamples']}"
    raise ArtifactError("unrecognised artifact")


def recompute_verdict(data: dict) -> str:
    """Rebuild the artifact's object from its parameters and derive the verdict afresh."""
    if "schema_version" in data:
        cert = NonIsoCertificate.from_json(data)
        p = cert.parameters
        if cert.kind == "fermat":
            return certify_fermat_noniso(p["p"], p["q"], p["ell"]).verdict
        if cert.kind == "danielewski":
            return certify_danielewski_noniso(p["n"], p["m"], p["ell"], p["ell_prime"]).verdict
        if cert.kind == "fiber-multiset":
            a, b = p["first"], p["second"]
            return certify_fiber_distinct(
                p["p"], p["q"], a["ell"], FibrationSpec.parse(a["map"]),
                b["ell"], FibrationSpec.parse(b["map"]), p["torus_factors"],
            ).verdict
        raise ArtifactError(f"unknown certificate kind {cert.kind!r}")
    if data.get("artifact") == "iso-recipe":
        phi = MonomialRingMap.from_json(data["map"])
        req = data["oracle_request"]
        return verify_map(phi, points=req["points"], seed=req["seed"]).verdict
    if data.get("artifact") == "fiber-report":
        report = degenerate_fibers(data["p"], data["q"], data["ell"], FibrationSpec.parse(data["map"]))
        if list(report.multiset) != data["multiset"]:
            return "mismatch"
        return "computed"
    if data.get("artifact") == "scan":
        fam = data["family"]
        spec = FamilySpec(fam["kind"], tuple(fam["params"].items()))
        req = data["oracle_request"]
        result = scan_family(spec, data["max_ell"], points=req["points"], seed=req["seed"])
        return f"counterexamples {result.to_json()['counterexamples']}"
    raise ArtifactError("unrecognised artifact")
