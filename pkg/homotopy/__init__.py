from homotopy.contractibility import ContractibilityCache, is_contractible
from homotopy.moves import HomotopyCertificate, apply_move, verify_certificate
from homotopy.search import Verdict, VerdictStatus, contractible_in, homotopic_bounded, reduce

__all__ = [
    "ContractibilityCache",
    "HomotopyCertificate",
    "Verdict",
    "VerdictStatus",
    "apply_move",
    "contractible_in",
    "homotopic_bounded",
    "is_contractible",
    "reduce",
    "verify_certificate",
]
