"""Field-calculus constructs and the per-round evaluation machine.

A program is a function ``vm -> value``.  Evaluation is pure: the same
Context always yields the same (output, export) pair.  Alignment is by
dynamic paths (see exports.py); a neighbour's value is consumed only by the
construct invocation at the identical path.
"""

from __future__ import annotations

import random as _random

from .context import Context
from .exports import ExportTree, is_wire_value, value_kind


class EvaluationError(Exception):
    """Program bug surfaced during evaluation (bad sensor, misuse, bad export)."""


class AlignmentBreak(Exception):
    """Internal: the currently folded neighbour is not aligned at this path."""


_MISSING = object()
_SELF = object()
_NOT_IN_FOLD = object()


class VM:
    """Mutable evaluation state for one round of one device."""

    __slots__ = (
        "ctx",
        "export",
        "_prev",
        "_prefix",
        "_counters",
        "_stack",
        "_folded",
        "_folded_entries",
        "_fold_dist",
        "_peers",
        "_rng",
    )

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.export: dict = {}
        prev = ctx.previous_export
        self._prev = prev.entries if prev is not None else {}
        self._prefix: tuple = ()
        self._counters: dict = {}
        self._stack: list = []
        self._folded = _NOT_IN_FOLD
        self._folded_entries: dict | None = None
        self._fold_dist = 0.0
        me = ctx.self_id
        self._peers = sorted(d for d in ctx.neighbour_exports if d != me)
        self._rng = None

    @property
    def random(self) -> _random.Random:
        """Deterministic per-round stream (same Context -> same draws)."""
        if self._rng is None:
            self._rng = _random.Random(self.ctx.rng_seed)
        return self._rng

    def _enter(self, kind: str, key=_MISSING) -> tuple:
        counters = self._counters
        idx = counters.get(kind, 0)
        counters[kind] = idx + 1
        slot = (kind, idx) if key is _MISSING else (kind, idx, key)
        self._stack.append((self._prefix, counters))
        path = self._prefix + (slot,)
        self._prefix = path
        self._counters = {}
        return path

    def _exit(self) -> None:
        self._prefix, self._counters = self._stack.pop()

    def _write(self, path: tuple, value) -> None:
        if not is_wire_value(value):
            raise EvaluationError(
                f"value of kind {type(value).__name__} cannot cross the wire"
            )
        self.export[path] = value


def evaluate(program, ctx: Context):
    """Run a program against a context; returns (output, ExportTree)."""
    vm = VM(ctx)
    out = program(vm)
    return out, ExportTree(vm.export)


def mid(vm: VM) -> int:
    """Identifier of the running device."""
    return vm.ctx.self_id


def sense(vm: VM, name: str):
    """Read a local sensor; missing sensors are an evaluation fault."""
    try:
        return vm.ctx.sensors[name]
    except KeyError:
        raise EvaluationError(f"missing sensor {name!r}") from None


def nbr_range(vm: VM) -> float:
    """Distance to the currently folded neighbour (0 for self)."""
    folded = vm._folded
    if folded is _NOT_IN_FOLD:
        raise EvaluationError("nbrRange used outside a foldhood evaluation")
    if folded is _SELF:
        return 0.0
    return vm._fold_dist


def nbr_id(vm: VM) -> int:
    """Identifier of the currently folded device (self outside neighbour
    substitution).  Equivalent to nbr(mid()) since ids are stable, without
    spending an export entry."""
    folded = vm._folded
    if folded is _NOT_IN_FOLD:
        raise EvaluationError("nbr_id used outside a foldhood evaluation")
    if folded is _SELF:
        return vm.ctx.self_id
    return folded


def mux(cond, then_value, else_value):
    """Purely functional selector; both arguments are already evaluated."""
    return then_value if cond else else_value


def rep(vm: VM, init, fun):
    """Stateful evolution: fun applied to last round's value at this path.

    A missing or kind-mismatched stored value is state loss: restart from
    fun(init).
    """
    path = vm._enter("r")
    prev = vm._prev.get(path, _MISSING)
    if prev is _MISSING or value_kind(prev) != value_kind(init):
        prev = init
    out = fun(prev)
    vm._write(path, out)
    vm._exit()
    return out


def nbr(vm: VM, expr):
    """Share-and-gather: evaluates expr for self, substitutes for neighbours."""
    folded = vm._folded
    if folded is _NOT_IN_FOLD:
        raise EvaluationError("nbr used outside a foldhood evaluation")
    # Path bookkeeping inlined: nbr dominates evaluation cost.
    counters = vm._counters
    idx = counters.get("n", 0)
    counters["n"] = idx + 1
    path = vm._prefix + (("n", idx),)
    if folded is _SELF:
        vm._stack.append((vm._prefix, counters))
        vm._prefix = path
        vm._counters = {}
        value = expr()
        vm._write(path, value)
        vm._prefix, vm._counters = vm._stack.pop()
        return value
    entries = vm._folded_entries
    if path not in entries:
        raise AlignmentBreak()
    return entries[path]


def _fold(vm: VM, init, acc, expr, include_self: bool):
    path = vm._enter("f")
    vm._write(path, True)  # alignment marker: folds restrict to aligned peers
    outer_folded = vm._folded
    outer_dist = vm._fold_dist
    base_depth = len(vm._stack)

    # Self pass always runs so nbr values get recorded for sharing.
    vm._folded = _SELF
    try:
        self_value = expr()
    finally:
        vm._folded = outer_folded
        vm._fold_dist = outer_dist
    result = acc(init, self_value) if include_self else init

    exports = vm.ctx.neighbour_exports
    dists = vm.ctx.nbr_distances
    outer_entries = vm._folded_entries
    for dev in vm._peers:
        entries = exports[dev].entries
        if path not in entries:
            continue  # not aligned at this fold (other branch, old program)
        vm._folded = dev
        vm._folded_entries = entries
        vm._fold_dist = dists[dev]
        vm._counters = {}
        vm._prefix = path
        try:
            value = expr()
        except AlignmentBreak:
            del vm._stack[base_depth:]
            continue
        finally:
            vm._folded = outer_folded
            vm._folded_entries = outer_entries
            vm._fold_dist = outer_dist
        result = acc(result, value)

    vm._exit()
    return result


def foldhood(vm: VM, init, acc, expr):
    """Fold expr over self and every aligned neighbour, starting from init."""
    return _fold(vm, init, acc, expr, include_self=True)


def foldhood_plus(vm: VM, init, acc, expr):
    """As foldhood but the self evaluation is shared, not folded."""
    return _fold(vm, init, acc, expr, include_self=False)


def branch(vm: VM, cond, then_thunk, else_thunk):
    """Evaluate only the taken side; the path records the condition, so
    devices on different sides never align."""
    taken = bool(cond)
    vm._enter("b", taken)
    out = then_thunk() if taken else else_thunk()
    vm._exit()
    return out


def aligned(vm: VM, key, thunk):
    """Evaluate thunk in a scope tagged by key; different keys never align."""
    if not is_wire_value(key):
        raise EvaluationError("alignment key must be a wire value")
    vm._enter("a", key)
    out = thunk()
    vm._exit()
    return out


def neighbouring_field(vm: VM, expr):
    """Set of the expr values of all aligned neighbours, self included."""
    return foldhood(
        vm, frozenset(), lambda a, b: a | b, lambda: frozenset((nbr(vm, expr),))
    )


def neighbour_ids(vm: VM) -> frozenset:
    """Identifiers of all neighbours, self included."""
    return neighbouring_field(vm, lambda: mid(vm))
