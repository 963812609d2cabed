"""Record of the rewrites the planar step machine applied to one atom."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Tuple

from ..exceptions import RecognitionError
from ..graph import Graph
from .leaf import LeafVertex

# Step labels, named after the case of the machine that produced them
STEP_TYPE1 = '2'
STEP_REMOVE_LEAF = '4a'
STEP_FORCE_EDGES = '4b-ii'
STEP_ADD_BV = '5'
STEP_CONTRACT_VA = '5a'
STEP_CONNECT_B = '5b-i'
STEP_CONTRACT_BX = '5b-ii'
STEP_ADD_YZ = '5b-iii'


@dataclass(frozen=True)
class Step:
    step: str
    leaf: LeafVertex
    before: Graph
    after: Graph
    # before id -> after id; deleted vertices are absent
    id_map: Mapping[int, int]
    # before ids merged into a surviving vertex
    absorbed: FrozenSet[int] = frozenset()
    # ('remove-leaf', v), ('contract-interior', path), ('add-edge', x, y), ('contract-edge', keep, drop)
    operations: Tuple[Tuple, ...] = ()
    context: Mapping[str, int] = field(default_factory=dict)

    def lift_map(self) -> Dict[int, int]:
        """after id -> the before vertex it stands for."""
        return {new: old for old, new in self.id_map.items() if old not in self.absorbed}

    def to_dict(self):
        return {
            'step': self.step,
            'leaf': self.leaf.to_dict(),
            'operations': [list(op) for op in self.operations],
            'context': dict(self.context),
            'n': self.after.n,
            'm': self.after.m,
        }


@dataclass
class StepTrace:
    n: int
    m: int
    steps: List[Step] = field(default_factory=list)
    outcome: str = ''

    @property
    def bound(self) -> int:
        return 5 * self.n - self.m

    def __len__(self):
        return len(self.steps)

    def record(self, step: Step) -> None:
        self.steps.append(step)
        if len(self.steps) > self.bound:
            raise RecognitionError(
                f"step {step.step}: {len(self.steps)} rewrites exceed the bound 5n - m = {self.bound}")

    def to_dict(self):
        return {
            'n': self.n,
            'm': self.m,
            'bound': self.bound,
            'outcome': self.outcome,
            'steps': [s.to_dict() for s in self.steps],
        }
