"""Tree shapes and memory assignments, with flat-text serialization.

A shape is stored as nested tuples (k, left, right) where k is a key
index and an empty child is None. External nodes are implicit: the
empty child between keys j and j+1 is the gap node z_j. Node identities
are ('x', i) for key nodes and ('z', j) for gap nodes.

All traversals here are iterative. Trees produced by the near-balanced
builder are shallow, but adversarial zero-frequency instances can make
optimal trees degenerate to depth n, and n may be 10^5 or more.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParseError
from .model import MemoryModel, ProblemInstance

Node = tuple  # (k, left, right) with left/right Node or None
NodeId = tuple  # ('x', i) or ('z', j)


class AssignmentMode(enum.Enum):
    """Which nodes occupy memory locations."""

    INTERNAL_ONLY = "internal"
    ALL_NODES = "all"


@dataclass(frozen=True)
class TreeShape:
    """A BST over the key range lo..hi."""

    lo: int
    hi: int
    root: Node

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("key range must be nonempty")
        # inorder of internal nodes must be exactly lo..hi ascending
        expect = self.lo
        for k in self.inorder_keys():
            if k != expect:
                raise ValueError(f"inorder violation: expected key {expect}, found {k}")
            expect += 1
        if expect != self.hi + 1:
            raise ValueError(f"shape has {expect - self.lo} keys, range needs {self.size}")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def inorder_keys(self):
        """Yield key indices in symmetric order."""
        stack = []
        node = self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node[1]
            node = stack.pop()
            yield node[0]
            node = node[2]

    def nodes_preorder(self):
        """Yield (node_id, depth, lo, hi) for every internal AND external
        node, preorder, where (lo, hi) is the node's key range (empty for
        externals: hi = lo - 1)."""
        stack = [(self.root, 1, self.lo, self.hi)]
        while stack:
            node, depth, lo, hi = stack.pop()
            if node is None:
                # the gap below this empty range is z_{lo-1}
                yield ("z", lo - 1), depth, lo, hi
                continue
            k = node[0]
            yield ("x", k), depth, lo, hi
            stack.append((node[2], depth + 1, k + 1, hi))
            stack.append((node[1], depth + 1, lo, k - 1))

    def depth_profile(self) -> tuple[dict[int, int], dict[int, int]]:
        """Depths of every key node and gap node (root depth 1)."""
        dx: dict[int, int] = {}
        dz: dict[int, int] = {}
        for (kind, idx), depth, _, _ in self.nodes_preorder():
            (dx if kind == "x" else dz)[idx] = depth
        return dx, dz

    def subtree_weights(self, inst: ProblemInstance) -> dict[NodeId, int]:
        """Weight of the subtree rooted at each node; externals weigh q_j."""
        out: dict[NodeId, int] = {}
        for (kind, idx), _, lo, hi in self.nodes_preorder():
            if kind == "x":
                out[("x", idx)] = inst.weight(lo, hi)
            else:
                out[("z", idx)] = inst.q[idx]
        return out

    def parent_map(self) -> dict[NodeId, NodeId | None]:
        """Parent of every node; the root maps to None."""
        out: dict[NodeId, NodeId | None] = {("x", self.root[0]): None}
        stack = [self.root]
        while stack:
            node = stack.pop()
            k = node[0]
            for child, gap in ((node[1], k - 1), (node[2], k)):
                if child is None:
                    out[("z", gap)] = ("x", k)
                else:
                    out[("x", child[0])] = ("x", k)
                    stack.append(child)
        return out


def serialize_shape(shape: TreeShape) -> str:
    """Render as nested parentheses, '-' for an empty child."""
    parts: list[str] = []
    stack: list = [shape.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item is None:
            parts.append("-")
        else:
            parts.append(f"({item[0]}")
            stack.extend([")", item[2], item[1]])
    text = " ".join(parts)
    return text.replace("( ", "(").replace(" )", ")")


def parse_shape(text: str) -> TreeShape:
    """Parse the nested-parentheses tree format; validates inorder."""
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0
    root_holder: list = []
    frames: list[list] = []  # [k, left_or_None, n_children_done]

    def deliver(node):
        while True:
            if not frames:
                root_holder.append(node)
                return
            f = frames[-1]
            if f[2] == 0:
                f[1] = node
                f[2] = 1
            elif f[2] == 1:
                f[2] = 2
                f.append(node)
            else:
                raise ParseError(f"node {f[0]} has more than 2 children")
            return

    while pos < len(toks):
        tok = toks[pos]
        pos += 1
        if tok == "(":
            if pos >= len(toks):
                raise ParseError("unexpected end of tree text")
            try:
                k = int(toks[pos])
            except ValueError:
                raise ParseError(f"expected key index, got '{toks[pos]}'") from None
            pos += 1
            frames.append([k, None, 0])
        elif tok == "-":
            if not frames:
                raise ParseError("'-' outside any node")
            deliver(None)
        elif tok == ")":
            if not frames:
                raise ParseError("unbalanced ')' in tree text")
            f = frames.pop()
            if f[2] != 2:
                raise ParseError(f"node {f[0]} has {f[2]} children, needs 2")
            deliver((f[0], f[1], f[3]))
        else:
            raise ParseError(f"unexpected token '{tok}' in tree text")
    if frames:
        raise ParseError("unbalanced '(' in tree text")
    if len(root_holder) != 1:
        raise ParseError("tree text must contain exactly one tree")
    root = root_holder[0]
    if root is None:
        raise ParseError("tree must have at least one key")
    keys = []
    stack = []
    node = root
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node[1]
        node = stack.pop()
        keys.append(node[0])
        node = node[2]
    try:
        return TreeShape(keys[0], keys[-1], root)
    except ValueError as e:
        raise ParseError(str(e)) from None


@dataclass(frozen=True)
class MemoryAssignment:
    """Map from node identity to a 1-based memory address."""

    mode: AssignmentMode
    addresses: dict[NodeId, int]

    def __post_init__(self):
        addrs = dict(self.addresses)
        object.__setattr__(self, "addresses", addrs)
        seen = set()
        for node, a in addrs.items():
            if a < 1:
                raise ValueError(f"address {a} for node {node} is not positive")
            if a in seen:
                raise ValueError(f"address {a} assigned twice")
            seen.add(a)

    def address_of(self, node: NodeId) -> int:
        return self.addresses[node]

    def check_heap_order(self, shape: TreeShape, model: MemoryModel) -> bool:
        """True when no node sits in a cheaper location than its parent."""
        parents = shape.parent_map()
        for node, parent in parents.items():
            if parent is None or node not in self.addresses:
                continue
            if model.mu(self.addresses[parent]) > model.mu(self.addresses[node]):
                return False
        return True


def serialize_assignment(assignment: MemoryAssignment) -> str:
    lines = []
    for (kind, idx), a in sorted(assignment.addresses.items(), key=lambda t: t[1]):
        lines.append(f"node {kind}{idx} -> {a}")
    return "\n".join(lines) + "\n"


def parse_assignment(text: str, mode: AssignmentMode | None = None) -> MemoryAssignment:
    addrs: dict[NodeId, int] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 4 or tok[0] != "node" or tok[2] != "->":
            raise ParseError(f"line {ln}: expected 'node <id> -> <address>'")
        ident = tok[1]
        if len(ident) < 2 or ident[0] not in "xz" or not ident[1:].isdigit():
            raise ParseError(f"line {ln}: bad node id '{ident}'")
        try:
            a = int(tok[3])
        except ValueError:
            raise ParseError(f"line {ln}: bad address '{tok[3]}'") from None
        node = (ident[0], int(ident[1:]))
        if node in addrs:
            raise ParseError(f"line {ln}: node {ident} assigned twice")
        addrs[node] = a
    if not addrs:
        raise ParseError("assignment is empty")
    if mode is None:
        mode = AssignmentMode.ALL_NODES if any(k == "z" for k, _ in addrs) else AssignmentMode.INTERNAL_ONLY
    try:
        return MemoryAssignment(mode, addrs)
    except ValueError as e:
        raise ParseError(str(e)) from None
