import asyncio
import os
from typing import Callable, List, TypeVar

from loguru import logger

T = TypeVar("T")

VERIFY_SHARDS = int(os.environ.get("VERIFY_SHARDS", 1))

ShardFn = Callable[[int, int], T]


async def gather_shards(fn: ShardFn, shards: int) -> List[T]:
    """
    Run fn(index, count) for every shard in worker threads.
    Results come back in shard order regardless of completion order.
    """
    if shards < 1:
        raise ValueError(f"shard count must be positive, got {shards}")
    return await asyncio.gather(
        *[asyncio.to_thread(fn, index, shards) for index in range(shards)]
    )


def run_sharded(fn: ShardFn, shards: int = 1) -> List[T]:
    """Synchronous entry point for callers outside an event loop."""
    if shards == 1:
        return [fn(0, 1)]
    logger.info(f"Running {shards} shards")
    return asyncio.run(gather_shards(fn, shards))


def owns(index: int, shard: int, shards: int) -> bool:
    """Round-robin ownership of the enumeration index by a shard."""
    return index % shards == shard
