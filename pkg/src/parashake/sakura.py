"""Sakura tree coding: hops, nodes, frame bits and size formulas.

A hop is a logical unit (message bits or chaining values); a node is a
fully framed f-input.  Kangaroo hopping encodes a hop followed by
chaining hops into a single node.  Every node carries its own suffix and
padding bits, so the inner function absorbs exact rate multiples and
performs no padding of its own.

Layout conventions:

* Frame integers are bytes in stream order, least-significant bit first
  within each byte.  The coded chaining-value count is two bytes (value,
  then a length byte of 1); the no-interleaving marker is two bytes of
  all ones.
* Each node ends with marker bits ('1' for the final node, '10' for
  inner nodes), the suffix '11' and the multi-rate pad '1 0^z 1'.  Nodes
  designed rate-full have z = 0, i.e. they end with the literal 1111.
* Chaining hops flagged `aligned` are placed flush against the end of a
  fresh rate block, preceded by an alignment pad '1 0^z', so each one is
  absorbed by a single permutation call.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (BlockAlignmentError, GrammarError, SliceRangeError,
                     TooManyChainingValues)

RATE_BITS = 1088
CV_BITS = 512
MAX_CVS = 255

_NO_INTERLEAVING = (0xFF, 0xFF)


def _byte_bits(value: int) -> str:
    return "".join("1" if (value >> i) & 1 else "0" for i in range(8))


def chaining_frame_bits(n_cv: int) -> str:
    """Frame tail of a chaining hop: coded count, interleaving marker, '0'."""
    if not 1 <= n_cv <= MAX_CVS:
        raise TooManyChainingValues("chaining hop must hold 1..255 values")
    return (_byte_bits(n_cv) + _byte_bits(1)
            + _byte_bits(_NO_INTERLEAVING[0]) + _byte_bits(_NO_INTERLEAVING[1])
            + "0")


# ---------------------------------------------------------------------------
# Hops

@dataclass(frozen=True)
class MessageHop:
    """A slice of the global message: offset and length in bits."""
    offset: int
    length: int

    def __post_init__(self):
        if self.offset < 0 or self.length < 0:
            raise SliceRangeError("negative message slice")


@dataclass(frozen=True)
class ChainingHop:
    """A hop holding the chaining values of its children.

    Child 1 comes first in `children`.  With `kangaroo_first` it is
    encoded into the same node as this hop; all remaining children
    contribute 512-bit chaining values.  `aligned` nodes place the hop in
    its own rate block (used by composition layers, never by the first
    hop of a node).
    """
    children: tuple
    kangaroo_first: bool = True
    aligned: bool = False

    def __post_init__(self):
        n_cv = self.n_cv
        if n_cv < 1:
            raise GrammarError("chaining hop needs at least one chaining value")
        if n_cv > MAX_CVS:
            raise TooManyChainingValues("chaining hop must hold 1..255 values")

    @property
    def cv_children(self) -> tuple:
        return self.children[1:] if self.kangaroo_first else self.children

    @property
    def n_cv(self) -> int:
        return len(self.children) - (1 if self.kangaroo_first else 0)


@dataclass(frozen=True)
class HopTree:
    """A hop tree; the root is the final hop."""
    root: object
    message_bits: int


def iter_hops(tree: HopTree):
    """Yield (index, hop) pairs; the final hop has the empty index and
    child i of a hop indexed alpha has index alpha + (i-1,)."""
    stack = [((), tree.root)]
    while stack:
        index, hop = stack.pop()
        yield index, hop
        if isinstance(hop, ChainingHop):
            for i in range(len(hop.children) - 1, -1, -1):
                stack.append((index + (i,), hop.children[i]))


def validate_hop_tree(tree: HopTree) -> None:
    """Check slice bounds and chaining-value limits."""
    for _, hop in iter_hops(tree):
        if isinstance(hop, MessageHop):
            if hop.offset + hop.length > tree.message_bits:
                raise SliceRangeError("message slice beyond message end")


# ---------------------------------------------------------------------------
# Node layout segments

@dataclass(frozen=True)
class MessageBits:
    offset: int
    length: int


@dataclass(frozen=True)
class FrameBits:
    bits: str


@dataclass(frozen=True)
class CVSlot:
    producer: int = -1
    length: int = CV_BITS


@dataclass(frozen=True)
class AlignPad:
    """Alignment pad '1' followed by `zeros` zero bits."""
    zeros: int

    @property
    def bits(self) -> str:
        return "1" + "0" * self.zeros


def segment_length(seg) -> int:
    if isinstance(seg, MessageBits):
        return seg.length
    if isinstance(seg, CVSlot):
        return seg.length
    if isinstance(seg, FrameBits):
        return len(seg.bits)
    if isinstance(seg, AlignPad):
        return 1 + seg.zeros
    raise TypeError("unknown segment %r" % (seg,))


@dataclass(frozen=True)
class NodeLayout:
    """One fully framed f-input as an ordered list of segments."""
    segments: tuple
    is_final: bool
    total_bits: int = field(init=False, default=0)

    def __post_init__(self):
        total = sum(segment_length(s) for s in self.segments)
        if total <= 0 or total % RATE_BITS:
            raise BlockAlignmentError(
                "node is %d bits, not a positive multiple of %d"
                % (total, RATE_BITS))
        object.__setattr__(self, "total_bits", total)

    @property
    def blocks(self) -> int:
        return self.total_bits // RATE_BITS

    def cv_positions(self):
        """Yield (bit_position, producer) for every chaining-value slot."""
        pos = 0
        for seg in self.segments:
            if isinstance(seg, CVSlot):
                yield pos, seg.producer
            pos += segment_length(seg)

    def message_slices(self):
        pos = 0
        for seg in self.segments:
            if isinstance(seg, MessageBits):
                yield pos, seg.offset, seg.length
            pos += segment_length(seg)


@dataclass(frozen=True)
class NodeTree:
    """Topologically ordered nodes; in a complete plan the final node is
    last.  Fragments (inner-rooted subtrees) have no final node."""
    nodes: tuple
    message_bits: int

    @property
    def node_count(self) -> int:
        return len(self.nodes)


# ---------------------------------------------------------------------------
# Size formulas

def node_bit_cost(role: str, kind: str, l: int = 0, n_cv: int = 0) -> int:
    """Sakura-coded node size, excluding the 4 suffix/pad bits.

    role is 'inner' or 'final'; kind is 'message_only', 'chaining_only'
    or 'kangaroo'.  For kinds with a chaining hop the size is
    l [+2] + n_cv*512 + (floor(log256(n_cv)) + 1)*8 + 27 (inner) or
    + 26 (final); a lone message hop costs l+3 / l+2.
    """
    if role not in ("inner", "final"):
        raise ValueError("role must be inner or final")
    marker = 3 if role == "inner" else 2
    if kind == "message_only":
        if l < 0:
            raise ValueError("negative message length")
        return l + marker
    if kind not in ("chaining_only", "kangaroo"):
        raise ValueError("unknown node kind %r" % kind)
    if n_cv < 1:
        raise ValueError("chaining hop needs at least one value")
    if n_cv > MAX_CVS:
        raise TooManyChainingValues("chaining hop must hold 1..255 values")
    count_bytes = (n_cv.bit_length() - 1) // 8 + 2
    chain = n_cv * CV_BITS + 8 * count_bytes + 16 + 1
    if kind == "chaining_only":
        return chain + marker - 1
    return l + 2 + chain + marker - 1


# ---------------------------------------------------------------------------
# Encoders

def encode_message_hop(offset: int, length: int) -> list:
    """Message bits followed by the closing '1'; empty slices encode as
    the bare '1'."""
    segs = []
    if length:
        segs.append(MessageBits(offset, length))
    segs.append(FrameBits("1"))
    return segs


def encode_chaining_hop(producers, n_cv: int | None = None) -> list:
    """n_cv chaining-value slots, then the coded count, the
    no-interleaving marker and the closing '0' (512*n_cv + 33 bits)."""
    producers = list(producers)
    if n_cv is None:
        n_cv = len(producers)
    if n_cv != len(producers):
        raise GrammarError("coded count disagrees with the slot count")
    segs = [CVSlot(p) for p in producers]
    segs.append(FrameBits(chaining_frame_bits(n_cv)))
    return segs


def _tail_bits(is_final: bool, content_bits: int) -> str:
    """Node tail: marker, suffix '11' and multi-rate pad '1 0^z 1'."""
    marker = "1" if is_final else "10"
    base = content_bits + len(marker) + 4
    z = (-base) % RATE_BITS
    return marker + "11" + "1" + "0" * z + "1"


def encode_node(first, chain=(), is_final: bool = False,
                align_to_rate: bool = True,
                producer_ids=None) -> NodeLayout:
    """Lay out one node from a kangaroo chain.

    `first` is the node's first hop (message or chaining hop); `chain`
    holds the subsequent chaining hops, outermost last.  `producer_ids`
    supplies node ids for every chaining-value slot in order (defaults
    to placeholders).  With `align_to_rate` each hop flagged `aligned`
    is packed flush against the end of a fresh rate block; without it
    all chaining hops merge into a single hop compacted behind the first
    hop, with any slack absorbed by the closing pad.
    """
    chain = list(chain)
    for hop in chain:
        if not isinstance(hop, ChainingHop):
            raise GrammarError("only chaining hops may extend a node")
        if not hop.kangaroo_first:
            raise GrammarError("chain hops must absorb their first child")

    ids = iter(producer_ids) if producer_ids is not None else None

    def slots(hop):
        cvs = hop.cv_children
        if ids is None:
            return [-1] * len(cvs)
        return [next(ids) for _ in cvs]

    segs = []
    pos = 0

    def put(seg):
        nonlocal pos
        segs.append(seg)
        pos += segment_length(seg)

    if isinstance(first, MessageHop):
        for seg in encode_message_hop(first.offset, first.length):
            put(seg)
    elif isinstance(first, ChainingHop):
        if first.kangaroo_first:
            raise GrammarError("the first hop of a node cannot absorb a child")
        for seg in encode_chaining_hop(slots(first)):
            put(seg)
    else:
        raise GrammarError("unknown hop %r" % (first,))

    if align_to_rate:
        for idx, hop in enumerate(chain):
            hop_len = hop.n_cv * CV_BITS + 33
            last = idx == len(chain) - 1
            tail_len = (1 if is_final else 2) + 4 if last else 0
            if hop.aligned:
                need = pos + 1 + hop_len + tail_len
                target = ((need + RATE_BITS - 1) // RATE_BITS) * RATE_BITS
                put(AlignPad(target - tail_len - hop_len - pos - 1))
            else:
                put(FrameBits("1"))
            for seg in encode_chaining_hop(slots(hop)):
                put(seg)
    elif chain:
        merged = []
        for hop in chain:
            merged.extend(slots(hop))
        if len(merged) > MAX_CVS:
            raise TooManyChainingValues(
                "compacted hop would hold %d values" % len(merged))
        put(FrameBits("1"))
        for seg in encode_chaining_hop(merged):
            put(seg)

    put(FrameBits(_tail_bits(is_final, pos)))
    return NodeLayout(tuple(segs), is_final)


# ---------------------------------------------------------------------------
# Hop tree -> node tree

def map_hop_tree_to_node_tree(tree: HopTree, compaction: str = "aligned",
                              root_final: bool = True) -> NodeTree:
    """Deterministically expand a hop tree into its tree of nodes.

    compaction 'aligned' keeps one chaining hop per composition layer,
    rate-aligned; 'compacted' merges each node's chaining hops into a
    single hop placed directly behind the first hop.  The mapping visits
    producers before consumers, so node ids are topologically ordered and
    the root node comes last.
    """
    if compaction not in ("aligned", "compacted"):
        raise ValueError("compaction must be 'aligned' or 'compacted'")
    validate_hop_tree(tree)
    nodes = []

    def build(anchor, is_final: bool) -> int:
        chain_rev = [anchor]
        cur = anchor
        while isinstance(cur, ChainingHop) and cur.kangaroo_first:
            cur = cur.children[0]
            chain_rev.append(cur)
        hops = chain_rev[::-1]          # first hop ... anchor
        producer_ids = []
        for hop in hops:
            if isinstance(hop, ChainingHop):
                for child in hop.cv_children:
                    producer_ids.append(build(child, False))
        layout = encode_node(hops[0], hops[1:], is_final,
                             align_to_rate=(compaction == "aligned"),
                             producer_ids=producer_ids)
        nodes.append(layout)
        return len(nodes) - 1

    build(tree.root, root_final)
    return NodeTree(tuple(nodes), tree.message_bits)


# ---------------------------------------------------------------------------
# Validation

def _tokens(node: NodeLayout) -> list:
    toks = []
    for seg in node.segments:
        if isinstance(seg, MessageBits):
            toks.append(("m", seg.length))
        elif isinstance(seg, CVSlot):
            toks.append(("c", seg.producer))
        elif isinstance(seg, FrameBits):
            toks.extend(("f", ch) for ch in seg.bits)
        elif isinstance(seg, AlignPad):
            toks.extend(("f", ch) for ch in seg.bits)
        else:
            raise TypeError("unknown segment %r" % (seg,))
    return toks


def validate_grammar(node: NodeLayout) -> tuple[bool, str]:
    """Parse the node right to left under the tree coding rules.

    Returns (ok, diagnosis).  Frame bits are checked exactly: markers,
    suffix, multi-rate pad, alignment pads, the coded chaining-value
    count against the actual slot count, and the interleaving marker.
    """
    toks = _tokens(node)
    i = len(toks) - 1

    def fail(msg: str):
        raise GrammarError(msg)

    def take_frame(expect: str | None = None) -> str:
        nonlocal i
        if i < 0 or toks[i][0] != "f":
            fail("expected a frame bit")
        bit = toks[i][1]
        if expect is not None and bit != expect:
            fail("frame bit %r where %r was required" % (bit, expect))
        i -= 1
        return bit

    def skip_zeros() -> int:
        nonlocal i
        n = 0
        while i >= 0 and toks[i] == ("f", "0"):
            i -= 1
            n += 1
        return n

    try:
        # multi-rate pad, backwards: '1', zeros, '1'
        take_frame("1")
        skip_zeros()
        take_frame("1")
        # suffix '11'
        take_frame("1")
        take_frame("1")
        # node marker
        if node.is_final:
            take_frame("1")
        else:
            take_frame("0")
            take_frame("1")
        # hops
        while True:
            if i < 0:
                fail("node has no hops")
            kind, val = toks[i]
            if kind == "f" and val == "0":
                i -= 1
                coded = []
                for _ in range(32):
                    coded.append(take_frame())
                coded.reverse()
                count = sum(1 << k for k, b in enumerate(coded[0:8]) if b == "1")
                length_byte = sum(1 << k for k, b in enumerate(coded[8:16]) if b == "1")
                marker = sum(1 << k for k, b in enumerate(coded[16:32]) if b == "1")
                if marker != _NO_INTERLEAVING[0] | _NO_INTERLEAVING[1] << 8:
                    fail("bad interleaving marker")
                if length_byte != 1:
                    fail("bad coded-count length byte")
                if not 1 <= count <= MAX_CVS:
                    fail("coded chaining-value count out of range")
                got = 0
                while i >= 0 and toks[i][0] == "c":
                    i -= 1
                    got += 1
                if got != count:
                    fail("coded count %d disagrees with %d slots" % (count, got))
                if i < 0:
                    break               # chaining hop opens the node
                skip_zeros()
                take_frame("1")         # pad before this hop
                continue
            if kind == "f" and val == "1":
                i -= 1                  # message hop terminator
                if i >= 0 and toks[i][0] == "m":
                    i -= 1
                if i >= 0:
                    fail("message hop is not at the start of the node")
                break
            fail("unexpected %s token inside frame position" % kind)
    except GrammarError as exc:
        return False, str(exc)
    return True, "ok"


def validate_node_tree(tree: NodeTree, fragment: bool = False,
                       check_coverage: bool = True) -> tuple[bool, str]:
    """Structural checks over a whole node tree.

    Verifies per-node grammar, topological chaining-value references,
    the single-final-node rule, single use of every inner node's value,
    and (optionally) that message slices partition the message exactly.
    """
    if not tree.nodes:
        return False, "empty tree"
    uses = [0] * len(tree.nodes)
    for nid, node in enumerate(tree.nodes):
        ok, why = validate_grammar(node)
        if not ok:
            return False, "node %d: %s" % (nid, why)
        if node.is_final != (not fragment and nid == len(tree.nodes) - 1):
            return False, "node %d has the wrong final flag" % nid
        for _, producer in node.cv_positions():
            if not 0 <= producer < nid:
                return False, ("node %d consumes value of node %r, which is "
                               "not an earlier node" % (nid, producer))
            uses[producer] += 1
    for nid, n in enumerate(uses[:-1]):
        if n != 1:
            return False, "node %d value used %d times" % (nid, n)
    if uses[-1] != 0:
        return False, "root node value must be unused"
    if check_coverage:
        slices = []
        for node in tree.nodes:
            for _, offset, length in node.message_slices():
                slices.append((offset, length))
        slices.sort()
        pos = 0
        for offset, length in slices:
            if offset != pos:
                return False, "message gap or overlap at bit %d" % pos
            pos += length
        if pos != tree.message_bits:
            return False, "message covers %d of %d bits" % (pos, tree.message_bits)
    return True, "ok"
