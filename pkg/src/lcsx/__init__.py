"""lcsx: coordinated subject-hierarchy browsing and keyword search.

Builds a collection's topic DAG from authority broader-term relations,
serves BM25-ranked keyword search over the records, and links the two so
searches reveal promising tree branches and tree selections filter results.
"""

__version__ = "0.1.0"
