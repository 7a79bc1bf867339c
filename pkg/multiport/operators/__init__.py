from .local import (
    LocalOperator, IloCertificate, apply_local, apply_certificate, fidelity,
    verify_equivalence,
)
