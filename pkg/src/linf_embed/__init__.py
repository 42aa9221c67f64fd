"""Exact isometric embeddings of finite metric spaces into l-infinity^k."""

from .coloring import (
    ColorReport,
    ImpossibilityCertificate,
    MonoSubset,
    color_quadruple,
    find_monochromatic,
    impossibility_certificate,
    mono_color,
)
from .constructions import (
    CombinatorialCover,
    build_cover,
    greedy_cover,
    instantiate_cover,
    required_size,
)
from .embedder import embed_with_gain, embedding_from_cover
from .lipschitz import (
    EdgeCover,
    Embedding,
    LipschitzFn,
    cover_check,
    extend_lipschitz,
    frechet_embedding,
    lift_cover,
    tight_graph,
    verify_embedding,
)
from .metric import MetricSpace, from_pairs, generate, genericity, perturb_to_generic, validate
from .oracle import cross_check_construction, exact_m, part_feasible
from .trees import AdmissibleTree, CombinatorialTree, extend_tree, instantiate, lemma3_criterion, tree_function

__all__ = [
    "ColorReport",
    "ImpossibilityCertificate",
    "MonoSubset",
    "color_quadruple",
    "find_monochromatic",
    "impossibility_certificate",
    "mono_color",
    "CombinatorialCover",
    "build_cover",
    "greedy_cover",
    "instantiate_cover",
    "required_size",
    "embed_with_gain",
    "embedding_from_cover",
    "EdgeCover",
    "Embedding",
    "LipschitzFn",
    "cover_check",
    "extend_lipschitz",
    "frechet_embedding",
    "lift_cover",
    "tight_graph",
    "verify_embedding",
    "MetricSpace",
    "from_pairs",
    "generate",
    "genericity",
    "perturb_to_generic",
    "validate",
    "cross_check_construction",
    "exact_m",
    "part_feasible",
    "AdmissibleTree",
    "CombinatorialTree",
    "extend_tree",
    "instantiate",
    "lemma3_criterion",
    "tree_function",
]

__version__ = "0.1.0"
