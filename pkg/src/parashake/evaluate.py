"""Digest evaluation: the sequential reference path and a thread-pool
executor that must agree with it bit for bit.

The tree shape is part of the function being computed: two strategies
hashing the same message generally produce different digests.  Within a
fixed tree, the digest is independent of evaluation order and of
parallelism; scheduling metrics come from the simulator, never from wall
clocks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bits import BitString
from .errors import DependencyCycleError, SliceRangeError
from .sakura import (AlignPad, CVSlot, FrameBits, MessageBits, NodeLayout,
                     NodeTree)
from .sponge import DEFAULT_PARAMS, SpongeParams, inner_f, xof_output


@dataclass(frozen=True)
class Digest:
    bits: BitString
    total_calls: int

    def hex(self) -> str:
        return self.bits.hex()


def materialize_node(node: NodeLayout, message: BitString,
                     values: dict) -> BitString:
    """Assemble the node's bit stream from its segments."""
    acc = 0
    pos = 0
    for seg in node.segments:
        if isinstance(seg, MessageBits):
            if seg.offset + seg.length > len(message):
                raise SliceRangeError(
                    "slice [%d, %d) beyond the %d-bit message"
                    % (seg.offset, seg.offset + seg.length, len(message)))
            acc |= message.slice(seg.offset, seg.length).value << pos
            pos += seg.length
        elif isinstance(seg, CVSlot):
            cv = values[seg.producer]
            acc |= cv.value << pos
            pos += cv.length
        elif isinstance(seg, FrameBits):
            acc |= BitString.from01(seg.bits).value << pos
            pos += len(seg.bits)
        elif isinstance(seg, AlignPad):
            acc |= 1 << pos
            pos += 1 + seg.zeros
        else:
            raise TypeError("unknown segment %r" % (seg,))
    return BitString(acc, pos)


def _check_order(tree: NodeTree, order) -> list:
    if order is None:
        return list(range(len(tree.nodes)))
    order = list(order)
    if sorted(order) != list(range(len(tree.nodes))):
        raise DependencyCycleError("order is not a permutation of the nodes")
    seen = set()
    for nid in order:
        for _, producer in tree.nodes[nid].cv_positions():
            if producer not in seen:
                raise DependencyCycleError(
                    "order evaluates node %d before its producer %d"
                    % (nid, producer))
        seen.add(nid)
    return order


def evaluate_sequential(tree: NodeTree, message: BitString,
                        out_bits: int = 512,
                        params: SpongeParams = DEFAULT_PARAMS,
                        order=None) -> Digest:
    """Evaluate every node in (any) topological order; the final node is
    squeezed to `out_bits`.  Ground truth for all digests."""
    if not tree.nodes[-1].is_final:
        raise ValueError("tree has no final node")
    order = _check_order(tree, order)
    values = {}
    out = None
    calls = 0
    for nid in order:
        node = tree.nodes[nid]
        bits = materialize_node(node, message, values)
        if node.is_final:
            out, used = xof_output(bits, out_bits, params)
        else:
            values[nid], used = inner_f(bits, params)
        calls += used
    return Digest(out, calls)


def evaluate_parallel(tree: NodeTree, message: BitString,
                      out_bits: int = 512,
                      params: SpongeParams = DEFAULT_PARAMS,
                      max_workers: int | None = None) -> Digest:
    """Thread-pool evaluation in dependency waves.

    With the compiled kernel the permutation releases the GIL, so
    independent nodes genuinely overlap.  The digest is identical to the
    sequential path by construction; this is asserted by the
    differential suite, not assumed.
    """
    if not tree.nodes[-1].is_final:
        raise ValueError("tree has no final node")
    rank = []
    for nid, node in enumerate(tree.nodes):
        deps = [producer for _, producer in node.cv_positions()]
        for producer in deps:
            if not 0 <= producer < nid:
                raise DependencyCycleError(
                    "node %d consumes value of node %r, which is not an "
                    "earlier node" % (nid, producer))
        rank.append(1 + max((rank[p] for p in deps), default=0))
    waves = {}
    for nid, r in enumerate(rank):
        waves.setdefault(r, []).append(nid)

    values = {}
    results = {}

    def run(nid: int):
        node = tree.nodes[nid]
        bits = materialize_node(node, message, values)
        if node.is_final:
            return xof_output(bits, out_bits, params)
        return inner_f(bits, params)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        for r in sorted(waves):
            wave = waves[r]
            for nid, result in zip(wave, pool.map(run, wave)):
                results[nid] = result
                if not tree.nodes[nid].is_final:
                    values[nid] = result[0]
    out, _ = results[len(tree.nodes) - 1]
    calls = sum(used for _, used in results.values())
    return Digest(out, calls)


def differential_check(tree: NodeTree, message: BitString,
                       out_bits: int = 512,
                       params: SpongeParams = DEFAULT_PARAMS) -> bool:
    """True iff the parallel executor reproduces the sequential digest."""
    a = evaluate_sequential(tree, message, out_bits, params)
    b = evaluate_parallel(tree, message, out_bits, params)
    return a.bits == b.bits and a.total_calls == b.total_calls
