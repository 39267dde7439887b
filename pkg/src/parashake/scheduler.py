"""Deterministic parallel-time simulation of a node tree.

One time unit is one permutation call.  Every node gets its own
processor starting at time 0 and absorbs one rate block per unit,
stalling on any block that contains a chaining-value slot whose producer
has not finished.  A value produced at time u is usable by a block whose
absorption starts at time >= u (strict precedence: finish before start).

Squeeze calls beyond the first rate extraction are charged to the final
node's processor after its last absorb; at the default 512-bit output
there are none, so theorem-level depth figures are pure absorption
depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DependencyCycleError
from .sakura import RATE_BITS, NodeTree


@dataclass(frozen=True)
class NodeTiming:
    node_id: int
    block_end: tuple          # absorption end time of each block, 1-based
    stalls: int

    @property
    def finish(self) -> int:
        return self.block_end[-1]


@dataclass(frozen=True)
class Schedule:
    timings: tuple
    depth: int
    processors: int
    max_concurrency: int
    absorb_calls: int
    squeeze_calls: int
    out_bits: int

    @property
    def total_calls(self) -> int:
        return self.absorb_calls + self.squeeze_calls

    @property
    def total_stalls(self) -> int:
        return sum(t.stalls for t in self.timings)


def block_dependencies(tree: NodeTree) -> list:
    """Per node, per block: producer ids whose value is absorbed there.

    A chaining value spanning several blocks binds at the first block it
    touches; later blocks of the same value are absorbed afterwards
    anyway.  Raises if references are not topologically ordered.
    """
    deps = []
    for nid, node in enumerate(tree.nodes):
        node_deps = [[] for _ in range(node.blocks)]
        for pos, producer in node.cv_positions():
            if not 0 <= producer < nid:
                raise DependencyCycleError(
                    "node %d consumes value of node %r, which is not an "
                    "earlier node" % (nid, producer))
            node_deps[pos // RATE_BITS].append(producer)
        deps.append(node_deps)
    return deps


def simulate(tree: NodeTree, out_bits: int = 512) -> Schedule:
    """Simulate absorption of every node; deterministic."""
    deps = block_dependencies(tree)
    finish = [0] * len(tree.nodes)
    timings = []
    for nid, node in enumerate(tree.nodes):
        end = 0
        ends = []
        for block in range(node.blocks):
            ready = end
            for producer in deps[nid][block]:
                if finish[producer] > ready:
                    ready = finish[producer]
            end = ready + 1
            ends.append(end)
        finish[nid] = end
        timings.append(NodeTiming(nid, tuple(ends), end - node.blocks))
    squeeze = 0
    if tree.nodes[-1].is_final:
        squeeze = max(0, -(-out_bits // RATE_BITS) - 1)
    depth = max(finish) + squeeze
    busy = [0] * (max(finish) + 1)
    for t in timings:
        for end in t.block_end:
            busy[end] += 1
    return Schedule(tuple(timings), depth, len(tree.nodes), max(busy),
                    sum(n.blocks for n in tree.nodes), squeeze, out_bits)


def validate_happens_before(schedule: Schedule, tree: NodeTree) -> bool:
    """True iff every chaining value is finished strictly before the
    absorption of the block holding it starts."""
    deps = block_dependencies(tree)
    finish = {t.node_id: t.finish for t in schedule.timings}
    for timing in schedule.timings:
        node_deps = deps[timing.node_id]
        if len(timing.block_end) != len(node_deps):
            return False
        prev = 0
        for block, end in enumerate(timing.block_end):
            if end <= prev:              # blocks absorb one per unit
                return False
            start = end - 1
            for producer in node_deps[block]:
                if finish[producer] > start:
                    return False
            prev = end
    return True


def work_and_width(schedule: Schedule) -> tuple:
    """(total permutation calls, processors, peak concurrent absorptions)."""
    return schedule.total_calls, schedule.processors, schedule.max_concurrency
