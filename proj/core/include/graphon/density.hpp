#pragma once

#include <vector>

#include "graphon/graph.hpp"
#include "graphon/graphon.hpp"
#include "graphon/motif.hpp"
#include "graphon/quadrature.hpp"

namespace graphon {

// Homomorphism density t(F,W) = integral over [0,1]^v(F) of the product of
// W over the edges of F.
//
// Evaluation: the Gauss-Legendre tensor sum, contracted by greedy variable
// elimination so that graphs of small treewidth (paths, cycles, joins of
// small motifs) are exact in O(p * N^4) regardless of p. When the
// elimination width would exceed 3 AND v(F) > q.dim_switch, falls back to
// Monte Carlo with q.mc_samples draws on a stream derived from q.mc_seed
// and the motif, so repeated calls agree bit for bit.
double t_graphon(const SimpleGraph& f, const Graphon& w, const QuadratureSpec& q = {});

// Induced density: product of W over edges and (1-W) over non-edges.
// Same evaluation strategy (the interaction graph is complete, so width
// is v(F)-1; exact through v(F) = 4 at the default budget).
double t_ind_graphon(const SimpleGraph& f, const Graphon& w, const QuadratureSpec& q = {});

struct RootedDensity {
    double t = 0.0;      // t_x
    double hat = 0.0;    // product of W over labeled-labeled edges
    double tilde = 0.0;  // integral over free coordinates of the remaining edges
};

// Rooted density triple at labeled coordinates x (one per label, in label
// order). t = hat * tilde holds exactly by construction.
RootedDensity t_x_rooted(const LabeledMotif& motif, const Graphon& w,
                         const std::vector<double>& x, const QuadratureSpec& q = {});

// Diagnostics for the last-resort Monte Carlo path: value plus one-sigma
// standard error (zero when the evaluation was deterministic).
struct DensityEstimate {
    double value = 0.0;
    double mc_error = 0.0;
    bool used_mc = false;
};

DensityEstimate t_graphon_detail(const SimpleGraph& f, const Graphon& w,
                                 const QuadratureSpec& q = {});

}  // namespace graphon
