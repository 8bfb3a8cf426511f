#pragma once

// MetricSpec and the line-oriented metric file format:
//
//   [space]
//   coords = x y z
//   [params]
//   lambda = -1
//   [metric]
//   g 1 1 = 1/z^2
//   [fields]
//   l = -4*cosh(x-4*z)^(-2)
//   w 1 = 0
//
// Indices are 1-based in files, 0-based internally.  Missing metric
// entries default to 0; supplying both g i j and g j i is a conflict.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "curvlab/errors.hpp"
#include "curvlab/expr.hpp"

namespace curvlab {

struct MetricSpec {
    std::vector<std::string> coords;
    std::map<std::string, double> params;
    std::vector<std::vector<Expr>> g;      // n x n, stored symmetrically
    std::map<std::string, Expr> fields;    // auxiliary scalar fields / one-forms

    int dim() const { return static_cast<int>(coords.size()); }

    void init_zero_metric() {
        int n = dim();
        g.assign(n, std::vector<Expr>(n, Expr::number(0)));
    }

    void set_g(int i, int j, Expr e) {
        g[i][j] = e;
        g[j][i] = e;
    }

    bool is_diagonal() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                if (i != j && !g[i][j].is_number(0)) return false;
        return true;
    }

    const Expr& field(const std::string& name) const {
        auto it = fields.find(name);
        if (it == fields.end())
            throw eval_error("missing field '" + name + "'");
        return it->second;
    }

    bool has_field(const std::string& name) const { return fields.count(name) != 0; }

    // Max Deriv nesting over all metric components.
    int deriv_depth() const {
        int d = 0;
        for (const auto& row : g)
            for (const auto& e : row)
                if (!e.empty() && e.deriv_depth() > d) d = e.deriv_depth();
        return d;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace detail

inline MetricSpec parse_metric_file(const std::string& text) {
    MetricSpec m;
    enum class Section { None, Space, Params, Metric, Fields } section = Section::None;
    std::vector<std::vector<bool>> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[space]")
                section = Section::Space;
            else if (line == "[params]")
                section = Section::Params;
            else if (line == "[metric]")
                section = Section::Metric;
            else if (line == "[fields]")
                section = Section::Fields;
            else
                throw parse_error("unknown section " + line, lineno);
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected 'name = value' line: " + line, lineno);
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));

        switch (section) {
            case Section::None:
                throw parse_error("content before any [section]", lineno);
            case Section::Space: {
                if (key != "coords")
                    throw parse_error("unknown [space] key '" + key + "'", lineno);
                std::istringstream cs(value);
                std::string c;
                while (cs >> c) m.coords.push_back(c);
                if (m.coords.size() != 3 && m.coords.size() != 6)
                    throw parse_error("dimension must be 3 or 6, got " +
                                          std::to_string(m.coords.size()),
                                      lineno);
                m.init_zero_metric();
                seen.assign(m.dim(), std::vector<bool>(m.dim(), false));
                break;
            }
            case Section::Params: {
                try {
                    m.params[key] = std::stod(value);
                } catch (const std::exception&) {
                    throw parse_error("malformed parameter value '" + value + "'", lineno);
                }
                break;
            }
            case Section::Metric: {
                if (m.coords.empty())
                    throw parse_error("[metric] before [space] coords line", lineno);
                std::istringstream ks(key);
                std::string gname;
                int i = 0, j = 0;
                if (!(ks >> gname >> i >> j) || gname != "g")
                    throw parse_error("expected 'g i j = expr', got '" + key + "'", lineno);
                if (i < 1 || i > m.dim() || j < 1 || j > m.dim())
                    throw parse_error("metric index out of range in '" + key + "'", lineno);
                if (seen[i - 1][j - 1] || seen[j - 1][i - 1])
                    throw parse_error("duplicate or conflicting metric entry g " +
                                          std::to_string(i) + " " + std::to_string(j),
                                      lineno);
                seen[i - 1][j - 1] = seen[j - 1][i - 1] = true;
                m.set_g(i - 1, j - 1, parse_expr(value));
                break;
            }
            case Section::Fields: {
                // normalize interior whitespace: "w  1" -> "w 1"
                std::istringstream ks(key);
                std::string part, norm;
                while (ks >> part) {
                    if (!norm.empty()) norm += ' ';
                    norm += part;
                }
                if (m.fields.count(norm))
                    throw parse_error("duplicate field '" + norm + "'", lineno);
                m.fields.emplace(norm, parse_expr(value));
                break;
            }
        }
    }

    if (m.coords.empty())
        throw parse_error("metric file has no coords line", lineno);
    return m;
}

inline std::string write_metric_file(const MetricSpec& m) {
    std::ostringstream out;
    out << "[space]\ncoords =";
    for (const auto& c : m.coords) out << ' ' << c;
    out << '\n';
    if (!m.params.empty()) {
        out << "[params]\n";
        for (const auto& [k, v] : m.params) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << k << " = " << buf << '\n';
        }
    }
    out << "[metric]\n";
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j)
            if (!m.g[i][j].is_number(0))
                out << "g " << (i + 1) << ' ' << (j + 1) << " = " << print_expr(m.g[i][j])
                    << '\n';
    if (!m.fields.empty()) {
        out << "[fields]\n";
        for (const auto& [k, e] : m.fields) out << k << " = " << print_expr(e) << '\n';
    }
    return out.str();
}

} // namespace curvlab
