#include "m5x/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace m5x {

std::string format_double(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x || (std::isnan(back) && std::isnan(x))) break;
    }
    return buf;
}

std::string theory_csv(const TheorySummary& s) {
    std::string header = "theta_tau";
    std::string row = format_double(s.theta_tau);
    for (int j = 1; j <= s.d; ++j) {
        header += ",theta_" + std::to_string(j);
        row += ',' + format_double(s.theta_j[static_cast<std::size_t>(j - 1)]);
    }
    for (int j = 1; j <= s.d; ++j)
        for (int j2 = j + 1; j2 <= s.d; ++j2) {
            header += ",lambda_hat_" + std::to_string(j) + "_" + std::to_string(j2);
            row += ',' + format_double(s.lam_hat(j, j2));
        }
    for (int j = 1; j <= s.d; ++j)
        for (int j2 = j + 1; j2 <= s.d; ++j2) {
            header += ",lambda_c_" + std::to_string(j) + "_" + std::to_string(j2);
            row += ',' + format_double(s.lam_c(j, j2));
        }
    header += ",eps_hat,eps_c,gamma_hat,gamma";
    row += ',' + format_double(s.eps_hat) + ',' + format_double(s.eps_c) + ',' +
           format_double(s.gamma_hat_value) + ',' + format_double(s.gamma_value);
    return header + "\n" + row + "\n";
}

std::string theory_report(const TheorySummary& s) {
    std::ostringstream os;
    os << "closed-form summary (d = " << s.d << ")\n";
    os << "  tau                 = (";
    for (std::size_t i = 0; i < s.tau.size(); ++i) os << (i ? "," : "") << format_double(s.tau[i]);
    os << ")\n";
    os << "  theta(tau)          = " << format_double(s.theta_tau) << "\n";
    for (int j = 1; j <= s.d; ++j)
        os << "  theta_" << j << "             = "
           << format_double(s.theta_j[static_cast<std::size_t>(j - 1)]) << "\n";
    for (int j = 1; j <= s.d; ++j)
        for (int j2 = j + 1; j2 <= s.d; ++j2)
            os << "  lambda_hat[" << j << "," << j2 << "]     = " << format_double(s.lam_hat(j, j2))
               << "\n";
    for (int j = 1; j <= s.d; ++j)
        for (int j2 = j + 1; j2 <= s.d; ++j2)
            os << "  lambda_c[" << j << "," << j2 << "]       = " << format_double(s.lam_c(j, j2))
               << "\n";
    os << "  eps_hat             = " << format_double(s.eps_hat) << "\n";
    os << "  eps_c               = " << format_double(s.eps_c) << "\n";
    os << "  gamma_hat(tau)      = " << format_double(s.gamma_hat_value) << "\n";
    os << "  gamma(tau)          = " << format_double(s.gamma_value) << "\n";
    return os.str();
}

std::string verify_csv(const VerifyReport& r) {
    std::string out = "quantity,context,theoretical,empirical,se,z\n";
    for (const auto& rec : r.records) {
        out += rec.quantity + ',' + rec.context + ',' + format_double(rec.theoretical) + ',' +
               format_double(rec.empirical) + ',' + format_double(rec.se) + ',' +
               format_double(rec.z) + '\n';
    }
    return out;
}

std::string verify_report_text(const VerifyReport& r, double z_gate) {
    std::ostringstream os;
    for (const auto& rec : r.records) {
        const bool ok = std::abs(rec.z) <= z_gate;
        char line[256];
        std::snprintf(line, sizeof line, "%-24s %-28s theory=%-12.6g emp=%-12.6g se=%-10.3g z=%+.2f %s\n",
                      rec.quantity.c_str(), rec.context.c_str(), rec.theoretical, rec.empirical,
                      rec.se, rec.z, ok ? "ok" : "FAIL");
        os << line;
    }
    os << (r.passed(z_gate) ? "verification passed" : "verification FAILED") << " (max |z| = "
       << format_double(r.max_abs_z()) << ", gate " << format_double(z_gate) << ")\n";
    return os.str();
}

void write_maxima_csv(std::ostream& os, std::span<const BlockMaxima> maxima) {
    os << "rep,j,m_dep,m_iid\n";
    for (std::size_t rep = 0; rep < maxima.size(); ++rep)
        for (std::size_t j = 0; j < maxima[rep].m_dep.size(); ++j)
            os << rep << ',' << (j + 1) << ',' << format_double(maxima[rep].m_dep[j]) << ','
               << format_double(maxima[rep].m_iid[j]) << '\n';
}

void write_paths_csv(std::ostream& os, const SimConfig& cfg) {
    os << "rep,t,j,value\n";
    for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
        RngStream rng(cfg.seed, stream_id::dep_path(static_cast<std::uint64_t>(rep)));
        const InnovationArray innov = gen_innovations(cfg.model, cfg.n, rng);
        const ProcessPath path = build_path(cfg.model, innov, cfg.n);
        for (std::int64_t t = 1; t <= cfg.n; ++t)
            for (int j = 1; j <= path.d; ++j)
                os << rep << ',' << t << ',' << j << ',' << format_double(path.at(t, j)) << '\n';
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace m5x
