#pragma once

#include <string>

namespace eqmorse {

// All numerical thresholds in one place. Values named "*_floor" or "*_tol"
// are relative to the scale noted next to them.
struct Tolerances {
  // representation
  double orthogonality = 1e-9;         // ||M^T M - I||_max; homomorphism uses 10x
  double fixed_space_rank = 1e-8;      // singular value cut, relative to sigma_max
  double stabilizer = 1e-6;            // ||g x - x|| <= tol * max(1, ||x||)
  double invariance = 1e-8;            // coefficient residual, relative to max |coeff|

  // poly
  double prune = 1e-14;                // coefficient pruning, relative to max |coeff|
  double restricted_degree = 1e-9;     // relative to largest composed coefficient
  double infinity_common_zero = 1e-6;  // relative to max |top form| on the circle

  // morse
  double boundary_polish = 1e-10;      // |Q| after Newton polish, x scale(Q)
  double singular_boundary = 1e-7;     // ||grad Q|| floor, x scale(Q)
  double boundary_field_floor = 1e-7;  // min ||v|| on the boundary, x scale(v)
  double tangency_residual = 1e-9;     // |h| at a refined tangency, x scale(h)
  double genericity_floor = 1e-6;      // |D_v h| floor, x scale(D_v h)
  double zero_residual = 1e-10;        // ||v|| at a zero, x scale(v)
  double simple_zero_floor = 1e-8;     // |det J| floor, x scale(v)^n
  double zero_boundary_margin = 1e-8;  // |Q| at a zero, x scale(Q)
  double zero_dedup = 1e-6;            // x bounding radius
  double integrality = 0.01;           // turning / winding integrals
  double strata_hausdorff = 1e-5;      // x bounding radius
  double rank = 1e-8;                  // projection rank (khovanskii)
  double curvature_residual = 1e-3;

  // gauss
  double nonvanishing_floor = 1e-7;    // x scale(w)

  int grid_resolution = 512;
  int zero_seed_grid = 64;
  int zero_seeds_per_line = 256;
  int line_samples = 4096;
  int nonvanishing_grid = 128;
  int group_cap = 64;

  std::string profile = "default";
};

/// Named tolerance profiles accepted by `--tol-profile`.
inline bool apply_profile(Tolerances& tol, const std::string& name) {
  if (name == "default") {
    tol = Tolerances{};
    return true;
  }
  if (name == "strict") {
    tol = Tolerances{};
    tol.grid_resolution = 1024;
    tol.zero_seed_grid = 128;
    tol.boundary_polish = 1e-12;
    tol.zero_residual = 1e-12;
    tol.profile = name;
    return true;
  }
  if (name == "coarse") {
    tol = Tolerances{};
    tol.grid_resolution = 256;
    tol.zero_seed_grid = 48;
    tol.profile = name;
    return true;
  }
  return false;
}

/// Visits every numeric tolerance as (name, reference, description).
template <class Tol, class F>
void for_each_tolerance(Tol& t, F&& f) {
  f("orthogonality", t.orthogonality, "max |M^T M - I| for representation matrices");
  f("fixed_space_rank", t.fixed_space_rank, "relative singular-value cut for fixed subspaces");
  f("stabilizer", t.stabilizer, "|g x - x| cut for stabilizers, times max(1, |x|)");
  f("invariance", t.invariance, "coefficient residual for invariance checks");
  f("prune", t.prune, "relative coefficient pruning");
  f("restricted_degree", t.restricted_degree, "relative cut when reading the degree of Q on a subspace");
  f("infinity_common_zero", t.infinity_common_zero, "common-zero threshold of top-degree forms");
  f("boundary_polish", t.boundary_polish, "|Q| after projecting onto Q = 0");
  f("singular_boundary", t.singular_boundary, "floor on |grad Q| along the boundary");
  f("boundary_field_floor", t.boundary_field_floor, "floor on |v| along the boundary");
  f("tangency_residual", t.tangency_residual, "|h| at a refined tangency");
  f("genericity_floor", t.genericity_floor, "floor on |D_v h| at tangencies");
  f("zero_residual", t.zero_residual, "|v| accepted at a zero");
  f("simple_zero_floor", t.simple_zero_floor, "floor on |det J| at zeros");
  f("zero_boundary_margin", t.zero_boundary_margin, "|Q| margin separating zeros from the boundary");
  f("zero_dedup", t.zero_dedup, "zero merge distance, times the bounding radius");
  f("integrality", t.integrality, "allowed distance of turning and winding numbers from integers");
  f("strata_hausdorff", t.strata_hausdorff, "fixed-line strata agreement, times the bounding radius");
  f("rank", t.rank, "singular-value cut for coordinate projections");
  f("curvature_residual", t.curvature_residual, "allowed curvature-integral residual");
  f("nonvanishing_floor", t.nonvanishing_floor, "floor on |w| for Gauss-degree fields");
  f("grid_resolution", t.grid_resolution, "marching-squares cells per side");
  f("zero_seed_grid", t.zero_seed_grid, "Newton seeds per side of the zero search grid");
  f("zero_seeds_per_line", t.zero_seeds_per_line, "Newton seeds on each fixed line");
  f("line_samples", t.line_samples, "sign-scan samples on each fixed line");
  f("nonvanishing_grid", t.nonvanishing_grid, "grid per side for the nonvanishing screen");
  f("group_cap", t.group_cap, "maximum group order");
}

}  // namespace eqmorse
