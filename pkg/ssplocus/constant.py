"""Constants"""
UTF8 = 'utf-8'

# The real place, wherever an odd prime or the real place is accepted.
REAL = 'R'

ENV_MAX_FIELD_ORDER = 'SSPLOCUS_MAX_FIELD_ORDER'
ENV_MAX_DIM = 'SSPLOCUS_MAX_DIM'
ENV_MAX_POINTS = 'SSPLOCUS_MAX_POINTS'

DEFAULT_MAX_FIELD_ORDER = 125
DEFAULT_MAX_DIM = 6
DEFAULT_MAX_POINTS = 25000  # projective points scanned by one enumeration

# Largest |det| tried when a profile document leaves the global determinant out.
DET_SEARCH_BOUND = 10 ** 5
