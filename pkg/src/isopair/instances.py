"""The stable on-disk instance and report formats.

An instance is a single self-describing JSON object with keys `mode`, `dim`,
`form` and either `a`/`b` (presymplectic mode) or `c1`/`c2` (poisson mode).
Every numeric entry is a rational string: "p", "-p" or "p/q" with q > 0 --
never floating point.  Field order is not significant on input; output is
canonical (fixed key order, fixed formatting), so parse followed by emit is
byte-exact on canonical documents.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from isopair.classify import (
    CheckResult,
    InternalInconsistencyError,
    IsotropicPair,
    MultiplicityVector,
    multiplicity_matrix,
)
from isopair.linalg import Matrix, Subspace
from isopair.poisson import CoisotropicPair, PoissonSpace, annihilator
from isopair.presymplectic import LinearMap, PresymplecticSpace

MODES = ("presymplectic", "poisson")

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def _render_json(obj, indent: int = 0) -> str:
    """Canonical JSON: one key or row per line, scalar lists inline."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        lines = ["{"]
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            comma = "," if i < len(items) - 1 else ""
            lines.append(f"{pad}  {json.dumps(key)}: "
                         f"{_render_json(value, indent + 1)}{comma}")
        lines.append(pad + "}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(x, (list, dict)) for x in obj):
            return json.dumps(obj)
        lines = ["["]
        for i, x in enumerate(obj):
            comma = "," if i < len(obj) - 1 else ""
            lines.append(f"{pad}  {_render_json(x, indent + 1)}{comma}")
        lines.append(pad + "]")
        return "\n".join(lines)
    return json.dumps(obj)


class DocumentError(ValueError):
    """Malformed instance document; the message names the offending field."""


def parse_rational(text: str, where: str = "value") -> Fraction:
    """Parse "p", "-p" or "p/q" (q > 0) exactly; everything else is an error."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise DocumentError(f"{where}: {text!r} is not a rational string 'p' or 'p/q'")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise DocumentError(f"{where}: denominator must be positive in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    return str(x)


def _parse_grid(raw, rows: int, cols: int, where: str) -> tuple[tuple[Fraction, ...], ...]:
    if not isinstance(raw, list) or len(raw) != rows:
        raise DocumentError(f"field '{where}': expected {rows} rows, got "
                            f"{len(raw) if isinstance(raw, list) else type(raw).__name__}")
    grid = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"field '{where}': row {i} must have {cols} entries")
        grid.append(tuple(parse_rational(x, f"field '{where}' row {i}") for x in row))
    return tuple(grid)


def _parse_vectors(raw, dim: int, where: str) -> tuple[tuple[Fraction, ...], ...]:
    if not isinstance(raw, list):
        raise DocumentError(f"field '{where}': expected a list of row vectors")
    vecs = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise DocumentError(f"field '{where}': vector {i} must have {dim} entries")
        vecs.append(tuple(parse_rational(x, f"field '{where}' vector {i}") for x in row))
    return tuple(vecs)


@dataclass(frozen=True)
class InstanceDocument:
    """A parsed instance: the form grid plus the two subspace generator lists.

    Rows are kept exactly as given; canonicalization happens only when the
    document is turned into a pair.
    """

    mode: str
    dim: int
    form: tuple[tuple[Fraction, ...], ...]
    first: tuple[tuple[Fraction, ...], ...]   # a (presymplectic) or c1 (poisson)
    second: tuple[tuple[Fraction, ...], ...]  # b or c2

    @property
    def subspace_keys(self) -> tuple[str, str]:
        return ("a", "b") if self.mode == "presymplectic" else ("c1", "c2")

    @classmethod
    def from_json_text(cls, text: str) -> "InstanceDocument":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(raw, dict):
            raise DocumentError("top level must be an object")
        mode = raw.get("mode")
        if mode not in MODES:
            raise DocumentError(f"field 'mode': must be one of {MODES}, got {mode!r}")
        dim = raw.get("dim")
        if not isinstance(dim, int) or dim < 0:
            raise DocumentError(f"field 'dim': must be a non-negative integer, got {dim!r}")
        ka, kb = ("a", "b") if mode == "presymplectic" else ("c1", "c2")
        for key in (ka, kb, "form"):
            if key not in raw:
                raise DocumentError(f"field '{key}': missing")
        unknown = set(raw) - {"mode", "dim", "form", ka, kb}
        if unknown:
            raise DocumentError(f"unknown fields: {sorted(unknown)}")
        form = _parse_grid(raw["form"], dim, dim, "form")
        first = _parse_vectors(raw[ka], dim, ka)
        second = _parse_vectors(raw[kb], dim, kb)
        return cls(mode, dim, form, first, second)

    def to_json_text(self) -> str:
        ka, kb = self.subspace_keys
        obj = {
            "mode": self.mode,
            "dim": self.dim,
            "form": [[format_rational(x) for x in row] for row in self.form],
            ka: [[format_rational(x) for x in row] for row in self.first],
            kb: [[format_rational(x) for x in row] for row in self.second],
        }
        return _render_json(obj) + "\n"

    # -- conversions --------------------------------------------------------

    def to_pair(self) -> IsotropicPair:
        """The isotropic pair described by a presymplectic-mode document."""
        if self.mode != "presymplectic":
            raise DocumentError("document is not in presymplectic mode")
        space = PresymplecticSpace(self.dim, Matrix(self.dim, self.dim, self.form))
        return IsotropicPair(space, Subspace.span(self.dim, self.first),
                             Subspace.span(self.dim, self.second))

    def to_coisotropic(self) -> CoisotropicPair:
        """The coisotropic pair described by a poisson-mode document."""
        if self.mode != "poisson":
            raise DocumentError("document is not in poisson mode")
        space = PoissonSpace(self.dim, Matrix(self.dim, self.dim, self.form))
        return CoisotropicPair(space, Subspace.span(self.dim, self.first),
                               Subspace.span(self.dim, self.second))

    def classified_pair(self) -> IsotropicPair:
        """The isotropic pair to classify, converting through annihilator
        duality in poisson mode."""
        if self.mode == "presymplectic":
            return self.to_pair()
        from isopair.poisson import to_isotropic_pair
        return to_isotropic_pair(self.to_coisotropic())

    @classmethod
    def from_pair(cls, pair: IsotropicPair) -> "InstanceDocument":
        return cls("presymplectic", pair.dim, pair.space.omega.entries,
                   pair.a.basis.entries, pair.b.basis.entries)

    @classmethod
    def from_pair_dualized(cls, pair: IsotropicPair) -> "InstanceDocument":
        """The poisson-mode document whose annihilator pair is `pair`."""
        n = pair.dim
        return cls("poisson", n, pair.space.omega.entries,
                   annihilator(n, pair.a).basis.entries,
                   annihilator(n, pair.b).basis.entries)


@dataclass(frozen=True)
class ClassificationReport:
    """Everything one classification run can emit.

    `k` is always present; the remaining fields depend on the command that
    produced the report.  Serialization re-checks M n = k whenever both
    vectors are present.
    """

    k: tuple[int, ...]
    n: tuple[int, ...] | None = None
    summand_dims: tuple[int, ...] | None = None
    witness: LinearMap | None = None
    summands: tuple[tuple[tuple[Fraction, ...], ...], ...] | None = None
    trace: tuple[tuple[str, tuple[tuple[Fraction, ...], ...]], ...] | None = None
    verification: tuple[CheckResult, ...] = ()

    def _check_consistency(self) -> None:
        if self.n is None:
            return
        m = multiplicity_matrix()
        for r in range(10):
            if sum(int(m.entries[r][c]) * self.n[c] for c in range(10)) != self.k[r]:
                raise InternalInconsistencyError(
                    "report violates the matrix relation between n and k")

    def to_json_text(self) -> str:
        self._check_consistency()
        obj: dict = {"k": list(self.k)}
        if self.n is not None:
            obj["n"] = list(self.n)
        if self.summand_dims is not None:
            obj["summand_dims"] = list(self.summand_dims)
        if self.witness is not None:
            obj["witness"] = {
                "source_dim": self.witness.source_dim,
                "target_dim": self.witness.target_dim,
                "matrix": [[format_rational(x) for x in row]
                           for row in self.witness.matrix.entries],
            }
        if self.summands is not None:
            obj["summands"] = [[[format_rational(x) for x in row] for row in basis]
                               for basis in self.summands]
        if self.trace is not None:
            obj["trace"] = [{"label": label,
                             "basis": [[format_rational(x) for x in row] for row in basis]}
                            for label, basis in self.trace]
        if self.verification:
            obj["verification"] = [
                {"name": c.name, "passed": c.passed,
                 **({"detail": c.detail} if c.detail else {})}
                for c in self.verification]
        return _render_json(obj) + "\n"

    def to_text(self) -> str:
        self._check_consistency()
        lines = [f"k = {self.k}"]
        if self.n is not None:
            lines.append(f"n = {self.n}")
        if self.summand_dims is not None:
            lines.append(f"summand dims = {self.summand_dims}")
        if self.witness is not None:
            lines.append("witness matrix (rows):")
            for row in self.witness.matrix.entries:
                lines.append("  " + " ".join(format_rational(x) for x in row))
        if self.summands is not None:
            lines.append("summand bases:")
            for i, basis in enumerate(self.summands, start=1):
                lines.append(f"  V{i} (dim {len(basis)}):" + ("" if basis else " -"))
                for row in basis:
                    lines.append("    " + " ".join(format_rational(x) for x in row))
        if self.trace is not None:
            lines.append("construction trace:")
            for label, basis in self.trace:
                lines.append(f"  {label} (dim {len(basis)}):" + ("" if basis else " -"))
                for row in basis:
                    lines.append("    " + " ".join(format_rational(x) for x in row))
        if self.verification:
            lines.append("verification:")
            for c in self.verification:
                mark = "ok  " if c.passed else "FAIL"
                lines.append(f"  {mark} {c.name}" + (f" - {c.detail}" if c.detail else ""))
        return "\n".join(lines) + "\n"
