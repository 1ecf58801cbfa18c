#pragma once

// JSON and CSV interchange. JSON uses insertion-ordered objects so key
// order is stable for golden files; CSV rows carry 17 significant digits
// for lossless round trips. Files are written atomically (temp + rename).

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kmlab/curvature.hpp"
#include "kmlab/errors.hpp"
#include "kmlab/matrix.hpp"
#include "kmlab/spectrum.hpp"
#include "kmlab/sweep.hpp"
#include "kmlab/version.hpp"

namespace kmlab {

using ojson = nlohmann::ordered_json;

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline ojson to_json(const Spectrum& s) {
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < s.size(); ++i) arr.push_back(s[i]);
    return arr;
}

inline Spectrum spectrum_from_json(const ojson& j) {
    if (!j.is_array() || j.empty()) throw domain_error("spectrum JSON must be a non-empty array");
    std::vector<double> v;
    for (const auto& e : j) {
        if (!e.is_number()) throw domain_error("spectrum JSON entries must be numbers");
        v.push_back(e.get<double>());
    }
    return Spectrum::from(std::move(v));
}

// complex entries serialize as [re, im]; real entries as plain numbers
inline ojson matrix_to_json(const Matrix& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < m.dim(); ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.dim(); ++j) {
            const cplx e = m(i, j);
            if (e.imag() == 0.0)
                row.push_back(e.real());
            else
                row.push_back(ojson::array({e.real(), e.imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const ojson& j) {
    if (!j.is_array() || j.empty()) throw domain_error("matrix JSON must be an array of rows");
    const int n = int(j.size());
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = j[std::size_t(i)];
        if (!row.is_array() || int(row.size()) != n)
            throw domain_error("matrix JSON must be square");
        for (int jj = 0; jj < n; ++jj) {
            const auto& e = row[std::size_t(jj)];
            if (e.is_number())
                m(i, jj) = e.get<double>();
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                m(i, jj) = cplx(e[0].get<double>(), e[1].get<double>());
            else
                throw domain_error("matrix JSON entries must be numbers or [re, im] pairs");
        }
    }
    return m;
}

inline ojson breakdown_to_json(const CurvatureBreakdown& br, double scal_value) {
    ojson j;
    j["version"] = version;
    j["pair"] = ojson::array({br.i + 1, br.j + 1}); // 1-based in the interchange format
    j["a"] = br.a;
    j["b"] = br.b;
    j["degenerate_pair"] = br.degenerate_pair;
    j["alpha"] = br.alpha;
    ojson b1 = ojson::object();
    for (const auto& [k, v] : br.beta1) b1[std::to_string(k + 1)] = v;
    j["beta1"] = std::move(b1);
    ojson b2 = ojson::object();
    for (const auto& [k, v] : br.beta2) b2[std::to_string(k + 1)] = v;
    j["beta2"] = std::move(b2);
    ojson g = ojson::object();
    for (const auto& [kl, v] : br.gamma)
        g[std::to_string(kl.first + 1) + "," + std::to_string(kl.second + 1)] = v;
    j["gamma"] = std::move(g);
    j["delta_total"] = br.delta_total;
    j["total"] = br.total;
    j["scal"] = scal_value;
    j["residual"] = br.total - scal_value;
    return j;
}

inline ojson report_to_json(const SweepReport& rep) {
    ojson j;
    j["version"] = version;
    j["description"] = rep.description;
    j["claim_class"] = claim_class_str(rep.claim_class);
    j["seed"] = rep.seed;
    ojson cfg = ojson::object();
    for (const auto& [k, v] : rep.config) cfg[k] = v;
    j["config"] = std::move(cfg);
    j["points_checked"] = rep.points_checked;
    j["ties"] = rep.ties;
    j["min_margin"] = std::isfinite(rep.min_margin) ? ojson(rep.min_margin) : ojson(nullptr);
    ojson viol = ojson::array();
    for (const auto& v : rep.violations) {
        ojson e;
        e["location"] = v.location;
        e["value"] = v.value;
        e["margin"] = v.margin;
        viol.push_back(std::move(e));
    }
    j["violations"] = std::move(viol);
    j["verdict"] = rep.verdict();
    j["matches_claim"] = rep.matches_claim();
    return j;
}

// CSV trace: leading '#' metadata lines, then a header row and one row per
// grid point with fixed column order.
inline std::string report_to_csv(const SweepReport& rep) {
    std::string out;
    out += "# version=" + std::string(version) + "\n";
    out += "# description=" + rep.description + "\n";
    out += "# claim_class=" + std::string(claim_class_str(rep.claim_class)) + "\n";
    out += "# seed=" + std::to_string(rep.seed) + "\n";
    for (const auto& [k, v] : rep.config) out += "# " + k + "=" + v + "\n";
    out += "# verdict=" + std::string(rep.verdict()) + "\n";
    for (std::size_t c = 0; c < rep.coord_names.size(); ++c) {
        out += rep.coord_names[c];
        out += ',';
    }
    out += "value,margin\n";
    for (const auto& p : rep.trace) {
        for (double c : p.coords) {
            out += fmt17(c);
            out += ',';
        }
        out += fmt17(p.value);
        out += ',';
        out += fmt17(p.margin);
        out += '\n';
    }
    return out;
}

inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw usage_error("cannot open output file: " + tmp);
        f.write(content.data(), std::streamsize(content.size()));
        if (!f) throw usage_error("failed writing output file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw usage_error("failed to move output into place: " + path);
}

} // namespace kmlab
