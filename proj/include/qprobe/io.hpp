#pragma once

// JSON interchange for matrices, count records and probing records, plus the
// CSV number formatting shared by every report.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qprobe/probing_bounds.hpp"
#include "qprobe/tomography.hpp"

namespace qprobe::io {

using json = nlohmann::json;

inline json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row_re = json::array(), row_im = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row_re.push_back(m(r, c).real());
            row_im.push_back(m(r, c).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline json matrix_to_json(const DensityMatrix& m) { return matrix_to_json(m.matrix()); }

/// Parses {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for
/// real matrices. `path` prefixes error messages.
inline ComplexMatrix matrix_from_json(const json& j, const std::string& path = "matrix") {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
        throw ConfigError(path + ": expected {\"dim\", \"re\", \"im\"}");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
        throw ConfigError(path + ".dim: must be a positive integer");
    }
    const auto n = static_cast<Eigen::Index>(j["dim"].get<long long>());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    auto read_part = [&](const char* key, bool imaginary) {
        const json& rows = j[key];
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
            throw ConfigError(path + "." + key + ": expected " + std::to_string(n) + " rows");
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            const json& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
                throw ConfigError(path + "." + key + "[" + std::to_string(r) + "]: expected " +
                                  std::to_string(n) + " entries");
            }
            for (Eigen::Index c = 0; c < n; ++c) {
                const json& v = row[static_cast<std::size_t>(c)];
                if (!v.is_number()) {
                    throw ConfigError(path + "." + key + "[" + std::to_string(r) + "][" + std::to_string(c) +
                                      "]: not a number");
                }
                if (imaginary) {
                    m(r, c).imag(v.get<double>());
                } else {
                    m(r, c).real(v.get<double>());
                }
            }
        }
    };
    read_part("re", false);
    if (j.contains("im")) read_part("im", true);
    return m;
}

inline DensityMatrix state_from_json(const json& j, const std::string& path = "state") {
    ComplexMatrix m = matrix_from_json(j, path);
    try {
        return DensityMatrix(std::move(m));
    } catch (const InvalidState& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline json counts_to_json(const CountRecord& c) {
    json out = json::object();
    for (Basis b : kStandardBases) out[to_string(b)] = json::array({c[b].plus, c[b].minus});
    return out;
}

inline CountRecord counts_from_json(const json& j, const std::string& path = "counts") {
    CountRecord out;
    for (Basis b : kStandardBases) {
        const std::string key = to_string(b);
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 || !j[key][0].is_number_integer() ||
            !j[key][1].is_number_integer()) {
            throw ConfigError(path + "." + key + ": expected [n_plus, n_minus] integers");
        }
        out[b].plus = j[key][0].get<std::int64_t>();
        out[b].minus = j[key][1].get<std::int64_t>();
        if (out[b].plus < 0 || out[b].minus < 0) {
            throw ConfigError(path + "." + key + ": counts must be nonnegative");
        }
    }
    return out;
}

inline json record_to_json(const ProbingRecord& r) {
    return json{{"delta_mu_hz", r.delta_mu},
                {"rho1", matrix_to_json(r.rho1)},
                {"rho2", matrix_to_json(r.rho2)},
                {"phi1_rho1", matrix_to_json(r.phi1_rho1)},
                {"phi2_rho2", matrix_to_json(r.phi2_rho2)}};
}

inline ProbingRecord record_from_json(const json& j, const std::string& path = "record") {
    if (!j.contains("delta_mu_hz") || !j["delta_mu_hz"].is_number()) {
        throw ConfigError(path + ".delta_mu_hz: required number");
    }
    for (const char* key : {"rho1", "rho2", "phi1_rho1", "phi2_rho2"}) {
        if (!j.contains(key)) throw ConfigError(path + "." + key + ": required matrix");
    }
    try {
        return ProbingRecord(state_from_json(j["rho1"], path + ".rho1"), state_from_json(j["rho2"], path + ".rho2"),
                             state_from_json(j["phi1_rho1"], path + ".phi1_rho1"),
                             state_from_json(j["phi2_rho2"], path + ".phi2_rho2"), j["delta_mu_hz"].get<double>());
    } catch (const PreconditionError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline json read_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(file + ": " + e.what());
    }
}

inline void write_text_file(const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(file + ": cannot write");
    out << text;
}

/// Scientific notation, 13 significant digits.
inline std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

inline std::string sci(const std::optional<double>& v) { return v ? sci(*v) : std::string(); }

/// alpha,b1_hz,b2_hz,valid1,valid2 with empty cells where a family is absent.
inline std::string bound_curve_csv(const BoundCurve& c) {
    std::ostringstream out;
    out << "alpha,b1_hz,b2_hz,valid1,valid2\r\n";
    for (std::size_t i = 0; i < c.alphas.size(); ++i) {
        out << sci(c.alphas[i]) << ',' << sci(c.b1[i]) << ',' << sci(c.b2[i]) << ',' << (c.valid1[i] ? 1 : 0) << ','
            << (c.valid2[i] ? 1 : 0) << "\r\n";
    }
    return out.str();
}

inline std::string fractions_csv(const BoundCurve& c) {
    std::ostringstream out;
    out << "alpha,fraction_forward,fraction_reversed\r\n";
    for (std::size_t i = 0; i < c.alphas.size(); ++i) {
        out << sci(c.alphas[i]) << ',' << sci(c.fraction_forward[i]) << ',' << sci(c.fraction_reversed[i]) << "\r\n";
    }
    return out.str();
}

/// b_inf, alpha_star and family; sigma_units only when a reference sigma is known.
inline json bound_summary(const BoundCurve& c, std::optional<double> reference_sigma = std::nullopt) {
    json s;
    if (c.b_inf) {
        s["b_inf_hz"] = c.b_inf->value;
        s["alpha_star"] = c.b_inf->alpha;
        s["family"] = to_string(c.b_inf->family);
        if (reference_sigma) s["sigma_units"] = c.b_inf->value / *reference_sigma;
    } else {
        s["b_inf_hz"] = nullptr;
        s["alpha_star"] = nullptr;
        s["family"] = nullptr;
        if (reference_sigma) s["sigma_units"] = nullptr;
    }
    s["no_information"] = c.no_information();
    return s;
}

inline json monte_carlo_to_json(const MonteCarloResult& r) {
    json j{{"mean_b_inf_hz", r.mean_b_inf},
           {"std_b_inf_hz", r.std_b_inf},
           {"no_info_fraction", r.no_info_fraction},
           {"replicas", r.replicas},
           {"seed", r.seed}};
    if (r.below_truth_fraction) j["below_truth_fraction"] = *r.below_truth_fraction;
    return j;
}

}  // namespace qprobe::io
