"""Pedals, primitives and primitivoids of plane curves.

Core objects:

- CurveDef: symbolic plane curve with cached derivative jets.
- transforms: pedal, contrapedal, antipedal, primitive, parallel and
  slant primitivoids, inversion, and sampled-polyline variants.
- envelope: independent envelope construction for line families.
- singularity: criteria, classification and witnesses for the cusps of
  primitives; inflections and vertices.
- frontal: Legendrian lifts of fronts and the frontal versions of the
  transforms.
- verify: named identity suites with residual reports.
"""

from .curve import (BUILTIN_NAMES, CurveDef, CurveJet, FrenetData, FrenetGrid,
                    builtin_curve, curve_diameter, format_curve, frenet,
                    frenet_grid, jet, load_curve, parse_curve, position_xy,
                    sample_grid, velocity_xy)
from .envelope import FAMILY_KINDS, LineFamily, envelope, make_family
from .errors import (EvalError, HypothesisViolated, InflectionPoint,
                     IrregularPoint, LiftFailure, OriginSingularity,
                     ParseError, PedalkitError, RangeError)
from .expr import Expr, differentiate, evaluate, parse_expr, simplify, to_text
from .frontal import (LegendrianCurve, SampledFrontal, composition_check,
                      frontal_antipedal, frontal_parallel_primitivoid,
                      frontal_pedal, frontal_primitive,
                      frontal_slant_primitivoid, invert_frontal, is_front,
                      legendrian_curvature, legendrian_residual, lift_front)
from .render import (Overlay, PlotSpec, overlay_from_curve,
                     overlay_from_frontal, overlay_from_mapped, render_svg,
                     render_to_file, write_legendrian_csv, write_mapped_csv)
from .singularity import (CuspClassification, OsculatingCircle,
                          SingularityReport, classify_cusp, criterion,
                          criterion_grid, detect_cusps_numeric, find_roots,
                          inflections, osculating_circle,
                          primitive_singularities, vertices)
from .transforms import (TRANSFORM_KINDS, MappedCurve, TransformKind,
                         antipedal, apply_transform, contrapedal,
                         inversion_curvature, inversion_curvature_grid,
                         invert_curve, mapped_pedal, mapped_primitive,
                         mapped_slant, parallel_primitivoid, pedal, pedaloid,
                         polyline_frames, primitive, primitive_of_perp,
                         slant_primitivoid, transform_curve)
from .vec import Line, Vec2, invert, perp, rotate
from .verify import SUITES, IdentityResult, VerifyReport, run_suite, stable_mask

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
