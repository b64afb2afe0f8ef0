//! Planar geometry kernel for rectangle-property experiments: exact
//! rectangle predicates, sampled convex curves (constant-width generators
//! and support-function machinery), violation scans over point sets,
//! tangent-disk boundary classification, and disk packings with circle
//! probes.

pub mod classify;
pub mod curve;
pub mod geom;
pub mod packing;
pub mod scan;

pub use classify::{
    classification_to_csv, classify_curve, classify_point, tangent_disk_at, ClassCounts,
    ClassError, ClassificationParams, ClassificationReport, PointClass, SideStats,
};
pub use curve::generators::{
    ellipse_curvature, generate_circle, generate_ellipse, generate_fourier_cw, generate_reuleaux,
    FourierCoeff,
};
pub use curve::support::{
    fourier_support_body, recomputed_support_deviation, support_to_curve, SupportBody,
    SupportCoeffs,
};
pub use curve::{
    constant_width_check, nearest_distance, perimeter, tangent_normal_at, width_function,
    CurveError, NearestApproach, SampledCurve, Similarity, TangentFrame, WidthProfile, WidthReport,
};
pub use geom::{
    circle_circle_intersect, complete_rectangle, is_rectangle, point_segment_distance,
    rectangle_metrics, right_angle_deviation, segment_distance_range, Circle, GeomError,
    IntersectionResult, Point2, Rectangle, RectangleMetrics, ToleranceContext,
};
pub use packing::probe::{
    exactly_m_search, probe_circle_intersection, probe_curve_intersection, probes_to_csv,
    ProbeError, ProbeFamily, ProbeResult, ProbeTarget, SearchOutcome, PROBE_CSV_HEADER,
};
pub use packing::{
    coverage_fraction, greedy_circle_packing, greedy_shape_packing, k_membership,
    packing_from_text, packing_to_text, validate_packing, Cell, CellKind, CompactSetK, DiskPacking,
    PackingError, ShapePacking,
};
pub use scan::{
    brute_force_scan, build_index, recheck_witness, scan_rectangle_property,
    verify_infinitesimal_condition, witnesses_to_csv, CurveDistanceIndex, CurveMembership,
    DiagonalConstraint, EpsBound, InfinitesimalOutcome, OpenChainMembership, PointSetMembership,
    RectangleWitness, ScanConstraints, ScanError, ScanReport, SetMembership, SideBound,
    SpatialIndex,
};
