import os
from typing import Optional

from matrep.equivalence import EquivalenceBackend

EQUIVALENCE_BACKEND = os.environ.get("EQUIVALENCE_BACKEND", "normal-form")


def get_backend(
    mode: Optional[str] = None, bound: Optional[int] = None, shards: int = 1
) -> EquivalenceBackend:
    mode = mode or EQUIVALENCE_BACKEND

    match mode:
        case "normal-form" | "normal_form":
            from matrep.providers.normal_form_backend import NormalFormBackend

            return NormalFormBackend()
        case "search":
            from matrep.providers.search_backend import SearchBackend

            return SearchBackend(bound=bound, shards=shards)
        case "both":
            from matrep.providers.crosscheck_backend import CrossCheckBackend
            from matrep.providers.normal_form_backend import NormalFormBackend
            from matrep.providers.search_backend import SearchBackend

            return CrossCheckBackend(
                search=SearchBackend(bound=bound, shards=shards),
                normal_form=NormalFormBackend(),
            )
        case _:
            raise ValueError(
                f"Unsupported equivalence backend: {mode}. "
                f"Try one of the following: normal-form, search, or both"
            )
