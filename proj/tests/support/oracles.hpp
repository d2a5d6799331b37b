#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's enumeration helpers and closed forms.

#include <cstdint>
#include <vector>

#include "gaugepf/gauge.hpp"
#include "gaugepf/model.hpp"

namespace oracle {

/// Sum over all configurations, reading each factor bit by bit.
double brute_partition(const gaugepf::MultiGM& m);

/// Weight of one configuration (bit k belongs to edge position k).
double brute_weight(const gaugepf::MultiGM& m, std::uint64_t config);

/// sum_sigma prod_a f~_a(sigma_a), where every f~_a is built by summing
/// prod_i G_i[sigma_i][s_i] f_a(s) over all s, with the gauge matrix written
/// out from its entries.
double brute_gauged_sum(const gaugepf::MultiGM& m, const gaugepf::GaugeVector& x);

/// The 2x2 gauge matrix from its entry formulas.
gaugepf::GaugeMatrix reference_matrix(double x_self, double x_sibling);

/// Permanent by summing over all permutations.
double permanent(const std::vector<std::vector<double>>& a);

/// Edge subsets (bit k = edge position k) in which no node has degree one,
/// found by testing every subset.
std::vector<std::uint64_t> brute_loops(const gaugepf::MultiGraph& g);

/// log Z_vbp by direct Bethe optimisation:
///   max_beta sum_edges (beta log beta + (1 - beta) log(1 - beta))
///            + sum_a min_u (log h_a(e^u) - sum_d beta_d u_d),
/// inner problem by exact coordinate scaling, outer by coordinate search
/// from several starts on [delta, 1 - delta].
double direct_bethe_log_z(const gaugepf::MultiGM& m, std::uint64_t seed, double delta = 1e-6);

/// Inner value for fixed edge beliefs (one per edge position).
double bethe_dual(const gaugepf::MultiGM& m, const std::vector<double>& beta);

}  // namespace oracle
