from census.classification import CensusReport, classify_homotopy
from census.enumeration import count_connected, enumerate_connected

__all__ = ["CensusReport", "classify_homotopy", "count_connected", "enumerate_connected"]
