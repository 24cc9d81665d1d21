"""Admissible and permissible sets in extended affine Weyl groups."""
from .affine import AffineRoot, AffineWeylGroup, ExtAffineElt, ParahoricError
from .admsets import (
    adm_st_contains, enumerate_adm, enumerate_adm_J, enumerate_adm_st,
    enumerate_perm, enumerate_perm_st_J, perm_contains, perm_st_J_contains,
)
from .bruhat import bruhat_leq, lower_closure
from .rootdatum import RootDatum, RootDatumError, build_root_datum, preset

__version__ = "0.1.0"

__all__ = [
    "AffineRoot", "AffineWeylGroup", "ExtAffineElt", "ParahoricError",
    "RootDatum", "RootDatumError", "build_root_datum", "preset",
    "bruhat_leq", "lower_closure",
    "enumerate_adm", "enumerate_adm_J", "enumerate_adm_st", "enumerate_perm",
    "enumerate_perm_st_J", "perm_contains", "perm_st_J_contains", "adm_st_contains",
]
