"""Finite point-free topology toolkit.

Carriers and covers, finite frames and their points, covering relations with
C1-C4 saturation, the locally fine closure of cover monoids, locale
generation and frame coproducts, formal-space entailment, and the
cover-refinement game.
"""

from .carrier import (
    Cover,
    Preorder,
    SubsetCarrier,
    all_canonical_covers,
    fold_meet,
    meet_cover,
    normalize,
    refines,
    restrict,
    star_refines,
)
from .covering import (
    AuditReport,
    CoveringMonoid,
    CoveringRelation,
    DerivationTrace,
    NoetherianTree,
    audit_axioms,
    bounded_member,
    fine_monoid,
    is_locally_fine,
    is_normal,
    lambda_close,
    member,
    rank,
    saturate,
    witness_tree,
)
from .errors import (
    CarrierMismatchError,
    InvalidTopologyError,
    LimitExceededError,
    LocfineError,
    NoStrategyError,
)
from .formal import (
    FormalPresentation,
    Judgment,
    covers_of_unit,
    derivation,
    entails,
)
from .frames import (
    Frame,
    Point,
    SpaceDescription,
    frame_from_space,
    frame_iso,
    is_spatial,
    point_extent,
    points_of,
    validate_frame,
)
from .game import GameSpec, GameResult, Player, Strategy, extract_strategy, solve, theorem6_check
from .products import (
    EmbeddingPhi,
    GeneratedLocale,
    canonical_cov,
    coproduct_frames,
    embed_phi_check,
    locale_from_cov,
    product_monoid,
    product_space,
    rect_basis_check,
    spatial_product_eq,
    star_variant_eq,
)

__all__ = [
    "Cover", "Preorder", "SubsetCarrier", "all_canonical_covers", "fold_meet",
    "meet_cover", "normalize", "refines", "restrict", "star_refines",
    "AuditReport", "CoveringMonoid", "CoveringRelation", "DerivationTrace",
    "NoetherianTree", "audit_axioms", "bounded_member", "fine_monoid",
    "is_locally_fine", "is_normal", "lambda_close", "member", "rank",
    "saturate", "witness_tree",
    "CarrierMismatchError", "InvalidTopologyError", "LimitExceededError",
    "LocfineError", "NoStrategyError",
    "FormalPresentation", "Judgment", "covers_of_unit", "derivation", "entails",
    "Frame", "Point", "SpaceDescription", "frame_from_space", "frame_iso",
    "is_spatial", "point_extent", "points_of", "validate_frame",
    "GameSpec", "GameResult", "Player", "Strategy", "extract_strategy",
    "solve", "theorem6_check",
    "EmbeddingPhi", "GeneratedLocale", "canonical_cov", "coproduct_frames",
    "embed_phi_check", "locale_from_cov", "product_monoid", "product_space",
    "rect_basis_check", "spatial_product_eq", "star_variant_eq",
]
