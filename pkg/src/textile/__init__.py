# Textile codes: realizability, enumeration and invariants
