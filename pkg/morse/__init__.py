from morse.category_index import category_index_profile
from morse.crit import crit, crit_exact, crit_heuristic
from morse.filtration import Ordering, index, index_profile
from morse.morse_functions import is_morse, morse_inequalities

__all__ = [
    "Ordering",
    "category_index_profile",
    "crit",
    "crit_exact",
    "crit_heuristic",
    "index",
    "index_profile",
    "is_morse",
    "morse_inequalities",
]
