"""Model files, the bundled catalog and the Drinfeld-double generator."""
from .catalog import builtin_catalog, catalog_names, get_model
from .drinfeld import cyclic_group, dihedral_group, drinfeld_double_data, symmetric_group
from .modelfile import ModelFile, canonicalize, model_from_fusion, parse_literal, parse_model, write_model

__all__ = ["ModelFile", "parse_model", "write_model", "canonicalize", "parse_literal",
           "model_from_fusion", "builtin_catalog", "catalog_names", "get_model",
           "drinfeld_double_data", "cyclic_group", "symmetric_group", "dihedral_group"]
