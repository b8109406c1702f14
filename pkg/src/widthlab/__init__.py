"""Width calculus for Morse presentations of links and tangles."""

from .cdisk import CDiskSchematic, SchematicEvent
from .dsl import ParseError, parse_schematic, parse_word, serialize_schematic, serialize_word
from .morse import Event, MorseWord, cap, classify_levels, cross, cup, strand_profile, validate, width
from .moves import MoveTrace, exchange, exchange_delta, orbit_min_width, push_block

__version__ = "0.1.0"
