#pragma once

#include <iosfwd>
#include <string>

#include "m5x/estimate.hpp"
#include "m5x/theory.hpp"

namespace m5x {

// Shortest representation that round-trips the double exactly; identical
// input always renders to identical bytes.
std::string format_double(double x);

// One header row plus one value row. Column order is fixed:
// theta_tau, theta_1..theta_d, lambda_hat_j_j2 (upper triangle, row-major),
// lambda_c_j_j2, eps_hat, eps_c, gamma_hat, gamma.
std::string theory_csv(const TheorySummary& s);

// Human-readable rendering of the same summary.
std::string theory_report(const TheorySummary& s);

// Columns: quantity, context, theoretical, empirical, se, z.
std::string verify_csv(const VerifyReport& r);

std::string verify_report_text(const VerifyReport& r, double z_gate);

// Columns: rep, j, m_dep, m_iid.
void write_maxima_csv(std::ostream& os, std::span<const BlockMaxima> maxima);

// Columns: rep, t, j, value. One block of rows per replication path,
// regenerated from the replication's own stream.
void write_paths_csv(std::ostream& os, const SimConfig& cfg);

void write_file(const std::string& path, const std::string& content);

}  // namespace m5x
