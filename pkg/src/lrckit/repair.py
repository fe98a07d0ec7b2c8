"""Group-local erasure recovery.

Within one repair group every codeword restricts to a degree < r polynomial
evaluated at the distinct nodes of B, so any r surviving symbols determine
the local polynomial and therefore every erased symbol of that group.  A
group of size r+mu-1 tolerates up to mu-1 erasures.

Repairs read exactly r survivors (the lowest slot indices, so traces are
deterministic) and never look at the generator matrix or the message: only
received symbols and the layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import LengthMismatch, NotErased, TooManyErasuresInGroup
from .gf import FieldElement, FieldSpec
from .construction import CodeInstance


@dataclass(frozen=True)
class ErasurePattern:
    """A received word with erased positions marked None."""

    received: tuple[FieldElement | None, ...]

    @classmethod
    def erase(cls, codeword, positions) -> "ErasurePattern":
        erased = set(positions)
        return cls(tuple(
            None if i in erased else sym for i, sym in enumerate(codeword)
        ))

    @property
    def erased_positions(self) -> tuple[int, ...]:
        return tuple(i for i, sym in enumerate(self.received) if sym is None)


@dataclass(frozen=True)
class RepairTrace:
    """What a repair touched: all reads stay inside the repaired group."""

    group: int
    repaired_positions: tuple[int, ...]
    read_slots: tuple[int, ...]
    read_positions: tuple[int, ...]

    @property
    def symbols_read(self) -> int:
        return len(self.read_slots)


def _check_pattern(instance: CodeInstance, pattern: ErasurePattern) -> None:
    if len(pattern.received) != instance.n:
        raise LengthMismatch(
            f"pattern length {len(pattern.received)} != code length {instance.n}"
        )


def _group_survivors(instance, pattern, group):
    """(slot, node, value) triples for unerased slots of the group, slot-ascending."""
    layout = instance.layout
    out = []
    for pos in layout.group_positions(group):
        sym = pattern.received[pos]
        if sym is not None:
            out.append((layout.slot_of(pos), layout.B[layout.slot_of(pos)], sym))
    return out


@lru_cache(maxsize=4096)
def _lagrange_weights(field: FieldSpec, node_encs: tuple[int, ...], target_enc: int):
    """Weights w_i with f(target) = sum w_i f(node_i) for deg < len(nodes) polys."""
    nodes = [field.element(e) for e in node_encs]
    target = field.element(target_enc)
    weights = []
    for i, xi in enumerate(nodes):
        num = field.one()
        den = field.one()
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            num = num * (target - xj)
            den = den * (xi - xj)
        weights.append(num * den.inverse())
    return tuple(weights)


def _interpolate_value(field, nodes, values, target) -> FieldElement:
    weights = _lagrange_weights(field, tuple(x.enc for x in nodes), target.enc)
    acc = field.zero()
    for wgt, val in zip(weights, values):
        if wgt and val:
            acc = acc + wgt * val
    return acc


def repair_position(
    instance: CodeInstance, pattern: ErasurePattern, position: int
) -> tuple[FieldElement, RepairTrace]:
    """Recover one erased symbol from r survivors of its own group."""
    _check_pattern(instance, pattern)
    if pattern.received[position] is not None:
        raise NotErased(f"position {position} is not erased")
    layout = instance.layout
    r = instance.params.r
    group = layout.group_of(position)
    survivors = _group_survivors(instance, pattern, group)
    if len(survivors) < r:
        raise TooManyErasuresInGroup(
            f"group {group} has {len(survivors)} survivors, repair needs {r}"
        )
    chosen = survivors[:r]
    nodes = [node for _, node, _ in chosen]
    values = [val for _, _, val in chosen]
    target = layout.B[layout.slot_of(position)]
    value = _interpolate_value(layout.field, nodes, values, target)
    trace = RepairTrace(
        group=group,
        repaired_positions=(position,),
        read_slots=tuple(slot for slot, _, _ in chosen),
        read_positions=tuple(layout.position_of(group, slot) for slot, _, _ in chosen),
    )
    return value, trace


def repair_group(
    instance: CodeInstance, pattern: ErasurePattern, group: int
) -> tuple[list[FieldElement], RepairTrace]:
    """Recover every erased symbol of a group (at most mu-1 of them).

    One interpolation from r survivors serves all the group's erasures;
    returned symbols are ordered by ascending slot.
    """
    _check_pattern(instance, pattern)
    layout = instance.layout
    params = instance.params
    erased_slots = [
        layout.slot_of(pos)
        for pos in layout.group_positions(group)
        if pattern.received[pos] is None
    ]
    if len(erased_slots) > params.mu - 1:
        raise TooManyErasuresInGroup(
            f"group {group} has {len(erased_slots)} erasures, tolerance is mu-1 = {params.mu - 1}"
        )
    survivors = _group_survivors(instance, pattern, group)
    chosen = survivors[: params.r]
    nodes = [node for _, node, _ in chosen]
    values = [val for _, _, val in chosen]
    repaired = [
        _interpolate_value(layout.field, nodes, values, layout.B[slot])
        for slot in erased_slots
    ]
    trace = RepairTrace(
        group=group,
        repaired_positions=tuple(layout.position_of(group, s) for s in erased_slots),
        read_slots=tuple(slot for slot, _, _ in chosen),
        read_positions=tuple(layout.position_of(group, slot) for slot, _, _ in chosen),
    )
    return repaired, trace
