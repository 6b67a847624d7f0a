from certificates.contracted import (
    certificate_mc,
    certificate_threshold,
    contracted_certificate,
    expected_certificate_units,
)
from certificates.mdcp import spf_certificate
from certificates.spanning import boruvka_spanning_forest, simple_spanning_forest
from graphs import CertificateForests, ni_certificate_explicit

__all__ = [
    "CertificateForests",
    "boruvka_spanning_forest",
    "certificate_mc",
    "certificate_threshold",
    "contracted_certificate",
    "expected_certificate_units",
    "ni_certificate_explicit",
    "simple_spanning_forest",
    "spf_certificate",
]
