"""Resource catalog for cryptanalytic target circuits.

Each entry records the logical-layer cost of one attack circuit (qubits,
T-count, T-depth, Cliffords) together with the claimed classical security
level. Entries are loaded from a TOML document and validated; the catalog
itself is immutable and safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class CatalogError(ValueError):
    """Malformed catalog document or entry-invariant violation."""


class CircuitKind(str, Enum):
    GROVER_ORACLE = "grover-oracle"
    SHOR_FACTORING = "shor-factoring"
    SHOR_ECDLP = "shor-ecdlp"
    TRIVIAL_ORACLE = "trivial-oracle"


def rsa_logical_qubits(n: int) -> int:
    """Logical qubits for factoring an n-bit RSA modulus: 2n + 2."""
    if n < 8 or n % 2 != 0:
        raise ValueError(f"modulus size out of range: {n}")
    return 2 * n + 2


def ecc_logical_qubits(n: int) -> int:
    """Logical qubits for an n-bit elliptic-curve dlog: 9n + 2*ceil(log2 n) + 10."""
    if n < 8:
        raise ValueError(f"field size out of range: {n}")
    return 9 * n + 2 * math.ceil(math.log2(n)) + 10


def _key_size_from_name(name: str) -> int | None:
    """Modulus/field bit size encoded in names like RSA-2048 or P-256."""
    head, sep, tail = name.rpartition("-")
    if sep and tail.isdigit():
        return int(tail)
    return None


_FIELDS = (
    "name",
    "kind",
    "logical_qubits",
    "t_count",
    "t_depth",
    "clifford_count",
    "search_space_bits",
    "classical_security_bits",
    "provenance",
)
_OPTIONAL_FIELDS = {"clifford_count", "search_space_bits"}


@dataclass(frozen=True)
class LogicalCircuitSpec:
    """Resource profile of one target circuit.

    For grover-oracle and trivial-oracle entries, t_count/t_depth/clifford_count
    are per single oracle evaluation of f; for shor-* entries they cover the
    full circuit execution.
    """

    name: str
    kind: CircuitKind
    logical_qubits: int
    t_count: int
    t_depth: int
    clifford_count: int | None = None
    search_space_bits: int | None = None
    classical_security_bits: int = 0
    provenance: str = ""

    def validate(self) -> None:
        if self.logical_qubits < 1:
            raise CatalogError(f"{self.name}: logical_qubits must be >= 1")
        if self.t_count < 0 or self.t_depth < 0:
            raise CatalogError(f"{self.name}: counts must be >= 0")
        if self.t_depth > self.t_count:
            raise CatalogError(f"{self.name}: t_depth {self.t_depth} exceeds t_count {self.t_count}")
        if self.clifford_count is not None and self.clifford_count < 0:
            raise CatalogError(f"{self.name}: clifford_count must be >= 0")

        if self.kind in (CircuitKind.GROVER_ORACLE, CircuitKind.TRIVIAL_ORACLE):
            if self.search_space_bits is None or self.search_space_bits < 0:
                raise CatalogError(f"{self.name}: search kinds need search_space_bits >= 0")
        if self.kind is CircuitKind.TRIVIAL_ORACLE and self.t_count != 0:
            raise CatalogError(f"{self.name}: trivial oracle must have t_count = 0")

        size = _key_size_from_name(self.name)
        if self.kind is CircuitKind.SHOR_FACTORING:
            if size is None:
                raise CatalogError(f"{self.name}: cannot infer modulus size from name")
            want = rsa_logical_qubits(size)
            if self.logical_qubits != want:
                raise CatalogError(
                    f"{self.name}: logical_qubits {self.logical_qubits} violates the "
                    f"2n+2 rule (expected {want} for n={size})"
                )
        if self.kind is CircuitKind.SHOR_ECDLP:
            if size is None:
                raise CatalogError(f"{self.name}: cannot infer field size from name")
            want = ecc_logical_qubits(size)
            if self.logical_qubits != want:
                raise CatalogError(
                    f"{self.name}: logical_qubits {self.logical_qubits} violates the "
                    f"9n+2*ceil(log2 n)+10 rule (expected {want} for n={size})"
                )

    @property
    def key_size(self) -> int | None:
        return _key_size_from_name(self.name)


#: Every scheme the bundled catalog must carry.
STANDARD_SCHEMES = (
    "AES-128", "AES-192", "AES-256",
    "SHA-256", "SHA3-256", "BITCOIN-POW",
    "TRIVIAL-56", "TRIVIAL-64", "TRIVIAL-128", "TRIVIAL-256",
    "RSA-1024", "RSA-2048", "RSA-3072", "RSA-4096", "RSA-7680", "RSA-15360",
    "P-160", "P-192", "P-224", "P-256", "P-384", "P-521",
)


@dataclass(frozen=True)
class Catalog:
    """Immutable, name-keyed collection of circuit specs."""

    entries: tuple[LogicalCircuitSpec, ...]
    source_version: str = "unversioned"

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for entry in self.entries:
            if entry.name in seen:
                raise CatalogError(f"duplicate catalog entry: {entry.name}")
            seen.add(entry.name)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)

    def get(self, name: str) -> LogicalCircuitSpec:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(f"unknown scheme: {name}")

    def by_kind(self, *kinds: CircuitKind) -> tuple[LogicalCircuitSpec, ...]:
        return tuple(e for e in self.entries if e.kind in kinds)

    def require_standard_schemes(self) -> None:
        missing = [s for s in STANDARD_SCHEMES if s not in self]
        if missing:
            raise CatalogError(f"catalog is missing required schemes: {missing}")


def _coerce_count(name: str, key: str, value) -> int:
    # Counts may be written as floats (e.g. 2.41e12) but must be integral.
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CatalogError(f"{name}: field {key} must be a number, got {value!r}")
    as_int = int(value)
    if as_int != value:
        raise CatalogError(f"{name}: field {key} must be an integer count, got {value!r}")
    return as_int


def parse_catalog(text: str, *, require_standard: bool = False) -> Catalog:
    """Parse and validate a catalog document.

    Raises CatalogError on malformed documents, duplicate names, or any
    entry-invariant violation; the message names the offending entry and rule.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise CatalogError(f"malformed catalog document: {exc}") from exc

    records = doc.get("scheme")
    if not records:
        raise CatalogError("empty catalog")
    version = doc.get("source_version", "unversioned")

    entries = []
    for record in records:
        name = record.get("name", "<unnamed>")
        unknown = set(record) - set(_FIELDS)
        if unknown:
            raise CatalogError(f"{name}: unknown fields {sorted(unknown)}")
        missing = set(_FIELDS) - _OPTIONAL_FIELDS - set(record)
        if missing:
            raise CatalogError(f"{name}: missing fields {sorted(missing)}")
        try:
            kind = CircuitKind(record["kind"])
        except ValueError as exc:
            raise CatalogError(f"{name}: unknown kind {record['kind']!r}") from exc
        entry = LogicalCircuitSpec(
            name=name,
            kind=kind,
            logical_qubits=_coerce_count(name, "logical_qubits", record["logical_qubits"]),
            t_count=_coerce_count(name, "t_count", record["t_count"]),
            t_depth=_coerce_count(name, "t_depth", record["t_depth"]),
            clifford_count=(
                _coerce_count(name, "clifford_count", record["clifford_count"])
                if "clifford_count" in record else None
            ),
            search_space_bits=(
                _coerce_count(name, "search_space_bits", record["search_space_bits"])
                if "search_space_bits" in record else None
            ),
            classical_security_bits=_coerce_count(
                name, "classical_security_bits", record["classical_security_bits"]
            ),
            provenance=str(record["provenance"]),
        )
        entry.validate()
        entries.append(entry)

    catalog = Catalog(entries=tuple(entries), source_version=str(version))
    if require_standard:
        catalog.require_standard_schemes()
    return catalog


def serialize_catalog(catalog: Catalog) -> str:
    """Render a catalog back to its document form (parse round-trips)."""
    lines = [f'source_version = "{catalog.source_version}"', ""]
    for e in catalog.entries:
        lines.append("[[scheme]]")
        lines.append(f'name = "{e.name}"')
        lines.append(f'kind = "{e.kind.value}"')
        lines.append(f"logical_qubits = {e.logical_qubits}")
        lines.append(f"t_count = {e.t_count}")
        lines.append(f"t_depth = {e.t_depth}")
        if e.clifford_count is not None:
            lines.append(f"clifford_count = {e.clifford_count}")
        if e.search_space_bits is not None:
            lines.append(f"search_space_bits = {e.search_space_bits}")
        lines.append(f"classical_security_bits = {e.classical_security_bits}")
        lines.append(f'provenance = "{e.provenance}"')
        lines.append("")
    return "\n".join(lines)


def load_catalog(path, *, require_standard: bool = False) -> Catalog:
    """Load a catalog document from a file path."""
    with open(path, "rb") as handle:
        text = handle.read().decode("utf-8")
    return parse_catalog(text, require_standard=require_standard)


def default_catalog() -> Catalog:
    """The bundled catalog, checked for completeness."""
    text = resources.files("qcost.data").joinpath("circuits.toml").read_text("utf-8")
    return parse_catalog(text, require_standard=True)
