//! Exact lattice polygon geometry and the combinatorial curve invariants
//! (genus, gonality, Clifford data, scrollar invariants) it determines.

pub mod bounds;
pub mod canonical;
pub mod curve;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod named;
pub mod parse;
pub mod polygon;
pub mod rational;
pub mod width;

pub use bounds::{
    verify_bounds, verify_gonality_bounds, verify_neargonal_bounds, BoundReport, BoundRow, BoundTable, ExceptionHit,
};
pub use canonical::{are_equivalent, canonical_form};
pub use curve::{
    cab_profile, clifford, curve_profile, genus, gonality, gonality_pencils, has_combinatorial_gonality_pencil,
    hirzebruch_profile, is_smooth_plane_model, near_gonal, pencil_data, CabProfile, Clifford, CurveProfile,
    HirzebruchProfile, NearGonalClass, PencilCount, PencilData, PencilKind,
};
pub use enumeration::{
    count_by_genus, enumerate_by_genus, enumerate_interior_hulls, enumerate_maximal, enumerate_with_point_count,
    EnumerationRecord, Enumerator,
};
pub use error::{Error, Result};
pub use lattice::{LatticeDirection, LatticePoint, UnimodularMap};
pub use named::{recognize, Family, NamedFamily};
pub use parse::{parse_direction, parse_points, parse_polygon};
pub use polygon::{minkowski_sum, mixed_volume, Counts, Dim, LatticePolygon};
pub use rational::{divisor_polygon, max_polygon, outward_polygon, DivisorPolygon, RationalPolygon, TorusDivisor};
pub use width::{
    directions_with_width_at_most, lattice_size, lattice_width, lattice_width_directions, provably_distinct_pencils,
    width, width_invariants, WidthProfile,
};
