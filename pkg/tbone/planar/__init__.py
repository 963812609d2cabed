from .embedding import (
    IntermediateGraph,
    PlaneEmbedding,
    cycle_neighbors,
    induces_cycle,
    intermediate_graph,
    is_planar,
    make_separator_cycle,
    planar_embed,
    require_embedding,
)
from .engine import StepMachine, Verdict, recognize_planar_tb1
from .leaf import LeafType, LeafVertex, classify, find_leaf_vertex, induced_path
from .replay import TreeDraft, replay
from .trace import Step, StepTrace
from .twobags import two_bag_star

__all__ = [
    'IntermediateGraph',
    'LeafType',
    'LeafVertex',
    'PlaneEmbedding',
    'Step',
    'StepMachine',
    'StepTrace',
    'TreeDraft',
    'Verdict',
    'classify',
    'cycle_neighbors',
    'find_leaf_vertex',
    'induced_path',
    'induces_cycle',
    'intermediate_graph',
    'is_planar',
    'make_separator_cycle',
    'planar_embed',
    'recognize_planar_tb1',
    'replay',
    'require_embedding',
    'two_bag_star',
]
