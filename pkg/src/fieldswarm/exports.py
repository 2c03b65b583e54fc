"""Path-indexed export trees: the per-round coordination payload.

A path is a tuple of slots identifying one construct invocation within a
round's evaluation.  Slots are (kind, index) pairs, where the index is a
dynamic per-kind counter inside the enclosing alignment scope; branch and
aligned slots additionally carry the taken condition / alignment key, so
devices evaluating different sides never share values.

Slot kinds: 'r' rep, 'n' nbr, 'f' foldhood, 'b' branch, 'a' aligned.
"""

from __future__ import annotations

from .vectors import Vec3


class Absent:
    """Marker for values of unreachable devices (single instance: ABSENT)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ABSENT"


ABSENT = Absent()

_ATOMIC = (bool, int, float, str)
_LEAF_TYPES = frozenset((bool, int, float, str, Vec3, type(None)))
_CONTAINER_TYPES = frozenset((tuple, frozenset))


def is_wire_value(v) -> bool:
    """Serializable value kinds allowed to cross the wire in an export."""
    stack = [v]
    while stack:
        item = stack.pop()
        cls = item.__class__
        if cls in _LEAF_TYPES or item is ABSENT:
            continue
        if cls in _CONTAINER_TYPES:
            stack.extend(item)
            continue
        # Slow path for subclasses of the allowed kinds.
        if isinstance(item, _ATOMIC) or isinstance(item, Vec3):
            continue
        if isinstance(item, (tuple, frozenset)):
            stack.extend(item)
            continue
        return False
    return True


def value_kind(v) -> str:
    """Coarse kind tag used by rep to detect state-loss on upgrades."""
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, (int, float)):
        return "number"
    if isinstance(v, str):
        return "str"
    if isinstance(v, Vec3):
        return "vec"
    if isinstance(v, tuple):
        return "tuple"
    if isinstance(v, frozenset):
        return "set"
    if v is ABSENT:
        return "absent"
    if v is None:
        return "none"
    return type(v).__name__


def _slot_text(slot) -> str:
    if len(slot) == 2:
        return f"{slot[0]}{slot[1]}"
    return f"{slot[0]}{slot[1]}[{slot[2]!r}]"


class ExportTree:
    """Map from paths to values produced by one round of evaluation."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict | None = None):
        self.entries = entries if entries is not None else {}

    def get(self, path, default=None):
        return self.entries.get(path, default)

    def __contains__(self, path) -> bool:
        return path in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExportTree) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"ExportTree({len(self.entries)} entries)"

    def encode(self) -> str:
        """Textual debug encoding, one `path "<slot;...>" = value` per line."""
        lines = []
        for path in sorted(self.entries, key=repr):
            slots = ";".join(_slot_text(s) for s in path)
            lines.append(f'path "{slots}" = {self.entries[path]!r}')
        return "\n".join(lines)


EMPTY_EXPORT = ExportTree({})
