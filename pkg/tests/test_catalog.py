import pytest
from hypothesis import given, strategies as st

from qcost.catalog import (
    Catalog,
    CatalogError,
    CircuitKind,
    LogicalCircuitSpec,
    default_catalog,
    ecc_logical_qubits,
    parse_catalog,
    rsa_logical_qubits,
    serialize_catalog,
    STANDARD_SCHEMES,
)

RSA_QUBITS = {1024: 2050, 2048: 4098, 3072: 6146, 4096: 8194, 7680: 15362, 15360: 30722}
ECC_QUBITS = {160: 1466, 192: 1754, 224: 2042, 256: 2330, 384: 3484, 521: 4719}


@pytest.mark.parametrize("n,expected", sorted(RSA_QUBITS.items()))
def test_rsa_logical_qubits_published_values(n, expected):
    assert rsa_logical_qubits(n) == expected


@pytest.mark.parametrize("n,expected", sorted(ECC_QUBITS.items()))
def test_ecc_logical_qubits_published_values(n, expected):
    assert ecc_logical_qubits(n) == expected


def test_rsa_logical_qubits_small_modulus():
    assert rsa_logical_qubits(8) == 18


@pytest.mark.parametrize("bad", [7, 6, 0, -2, 9, 1023])
def test_rsa_logical_qubits_rejects_bad_sizes(bad):
    with pytest.raises(ValueError):
        rsa_logical_qubits(bad)


def test_ecc_logical_qubits_rejects_small_field():
    with pytest.raises(ValueError):
        ecc_logical_qubits(7)


MINIMAL_DOC = """
source_version = "test"

[[scheme]]
name = "RSA-2048"
kind = "shor-factoring"
logical_qubits = 4098
t_count = 2410000000000
t_depth = 588000000
classical_security_bits = 112
provenance = "test row"
"""


def test_parse_catalog_rsa_row():
    catalog = parse_catalog(MINIMAL_DOC)
    entry = catalog.get("RSA-2048")
    assert entry.t_count == 2_410_000_000_000
    assert entry.logical_qubits == 4098
    assert entry.kind is CircuitKind.SHOR_FACTORING


def test_parse_catalog_empty_is_an_error():
    with pytest.raises(CatalogError, match="empty catalog"):
        parse_catalog('source_version = "x"\n')


def test_parse_catalog_enforces_factoring_qubit_rule():
    doc = MINIMAL_DOC.replace("logical_qubits = 4098", "logical_qubits = 4097")
    with pytest.raises(CatalogError, match="2n\\+2"):
        parse_catalog(doc)


def test_parse_catalog_rejects_duplicates():
    doc = MINIMAL_DOC + MINIMAL_DOC[MINIMAL_DOC.index("[[scheme]]"):]
    with pytest.raises(CatalogError, match="duplicate"):
        parse_catalog(doc)


def test_parse_catalog_rejects_unknown_fields():
    doc = MINIMAL_DOC + "extra_field = 3\n"
    with pytest.raises(CatalogError, match="unknown fields"):
        parse_catalog(doc)


def test_parse_catalog_rejects_depth_above_count():
    doc = MINIMAL_DOC.replace("t_depth = 588000000", "t_depth = 2410000000001")
    with pytest.raises(CatalogError, match="t_depth"):
        parse_catalog(doc)


def test_parse_catalog_rejects_malformed_toml():
    with pytest.raises(CatalogError, match="malformed"):
        parse_catalog("[[scheme]\nname =")


def test_trivial_oracle_must_be_free():
    spec = LogicalCircuitSpec(
        name="TRIVIAL-8", kind=CircuitKind.TRIVIAL_ORACLE, logical_qubits=9,
        t_count=5, t_depth=1, search_space_bits=8, classical_security_bits=8,
    )
    with pytest.raises(CatalogError, match="trivial"):
        spec.validate()


def test_serialize_round_trip_is_identity():
    catalog = default_catalog()
    again = parse_catalog(serialize_catalog(catalog))
    assert again == catalog


def test_default_catalog_is_complete():
    catalog = default_catalog()
    for name in STANDARD_SCHEMES:
        assert name in catalog
    assert all(entry.provenance for entry in catalog)


def test_default_catalog_table_t_counts_round_trip_exactly():
    # Summary-table T-counts must come back exactly as published.
    expected = {
        "RSA-1024": 3.01e11, "RSA-2048": 2.41e12, "RSA-3072": 8.12e12,
        "RSA-4096": 1.92e13, "RSA-7680": 1.27e14, "RSA-15360": 1.01e15,
        "P-160": 2.08e11, "P-192": 3.71e11, "P-224": 5.90e11,
        "P-256": 8.82e11, "P-384": 3.16e12, "P-521": 7.98e12,
    }
    catalog = default_catalog()
    for name, t_count in expected.items():
        assert catalog.get(name).t_count == int(t_count)


def test_catalog_lookup_errors():
    catalog = default_catalog()
    with pytest.raises(KeyError):
        catalog.get("DES-56")
    assert "DES-56" not in catalog


@given(
    qubits=st.integers(min_value=1, max_value=10**6),
    t_count=st.integers(min_value=0, max_value=10**15),
    bits=st.integers(min_value=0, max_value=512),
)
def test_grover_entries_round_trip(qubits, t_count, bits):
    entry = LogicalCircuitSpec(
        name="FUZZ-1", kind=CircuitKind.GROVER_ORACLE, logical_qubits=qubits,
        t_count=t_count, t_depth=min(t_count, 17), clifford_count=3,
        search_space_bits=bits, classical_security_bits=bits, provenance="fuzz",
    )
    entry.validate()
    catalog = Catalog(entries=(entry,), source_version="fuzz")
    assert parse_catalog(serialize_catalog(catalog)) == catalog
