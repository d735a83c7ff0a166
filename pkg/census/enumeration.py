"""Connected graphs of small order, one per isomorphism class.

Every connected graph has a vertex whose removal leaves it connected, so
layer n is reached from layer n-1 by attaching a new vertex to every
nonempty vertex subset and keeping one graph per canonical certificate.
"""

import logging
from typing import Dict, Iterator, Optional, Tuple

from tqdm import tqdm

from core.canonical import canonical_order
from core.config import get_settings
from core.errors import SizeLimitError
from core.graph import Masks, SimpleGraph

logger = logging.getLogger(__name__)

# Connected graphs on n unlabeled vertices
KNOWN_CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def _canonical_masks(masks: Masks) -> Tuple[Masks, bytes]:
    order, cert = canonical_order(masks)
    position = {p: i for i, p in enumerate(order)}
    relabeled = [0] * len(masks)
    for p, m in enumerate(masks):
        bits = 0
        rest = m
        while rest:
            low = rest & -rest
            rest ^= low
            bits |= 1 << position[low.bit_length() - 1]
        relabeled[position[p]] = bits
    return tuple(relabeled), cert


_LAYERS: Dict[int, Tuple[Masks, ...]] = {1: ((0,),)}


def _layer(n: int, progress: bool = False) -> Tuple[Masks, ...]:
    if n in _LAYERS:
        return _LAYERS[n]
    found: Dict[bytes, Masks] = {}
    parents = _layer(n - 1, progress)
    for masks in tqdm(parents, desc=f"order {n}", disable=not progress):
        for attach in range(1, 1 << (n - 1)):
            extended = [m | ((attach >> i & 1) << (n - 1)) for i, m in enumerate(masks)]
            extended.append(attach)
            canon, cert = _canonical_masks(tuple(extended))
            found.setdefault(cert, canon)
    layer = _LAYERS[n] = tuple(found[c] for c in sorted(found))
    logger.info("Order %d: %d connected graphs", n, len(layer))
    return layer


def check_order(n: int, long: bool = False) -> None:
    """Raises SizeLimitError when ``n`` is beyond the census limits."""
    settings = get_settings()
    limit = settings.census_long_order if long else settings.census_max_order
    if n > limit:
        suggestion = "pass --long to allow it" if n <= settings.census_long_order else "orders this large are out of scope"
        raise SizeLimitError("census order", n, limit, suggestion)


def enumerate_connected(n: int, long: bool = False, progress: Optional[bool] = None) -> Iterator[SimpleGraph]:
    """Canonical connected graphs on vertices 0..n-1, in certificate order.

    Raises:
        SizeLimitError: ``n`` above the census limit
    """
    if n < 1:
        return
    check_order(n, long)
    progress = get_settings().progress if progress is None else progress
    for masks in _layer(n, progress):
        yield SimpleGraph.from_masks(masks)


def count_connected(n: int, long: bool = False) -> int:
    check_order(n, long)
    return len(_layer(n)) if n >= 1 else 0
