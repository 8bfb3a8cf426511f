// Command-line front end: verdict checks, residual scans, Chern-Simons
// evaluation, the 6D doubling construction, the 1-form Laplace residual,
// and the built-in example registry.
//
// Exit codes: 0 all verdicts pass (or match expectations for the
// registry), 1 verdict failure, 2 usage or input-parse error, 3 evaluation
// error.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvlab/corpus.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/extension.hpp"
#include "curvlab/metric.hpp"
#include "curvlab/report.hpp"
#include "curvlab/residuals.hpp"
#include "curvlab/tensor.hpp"
#include "curvlab/verdicts.hpp"

namespace {

using namespace curvlab;

struct Common {
    int points = 64;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::vector<double> box;
    bool json = false;
    std::string output;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--points", c.points, "number of sample points")->capture_default_str();
    cmd->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
    cmd->add_option("--tol", c.tol, "verdict tolerance")->capture_default_str();
    cmd->add_option("--box", c.box,
                    "sample box: 'lo hi' applied to every axis, or one pair per axis")
        ->expected(-1);
    cmd->add_flag("--json", c.json, "emit JSON instead of text");
    cmd->add_option("--output", c.output, "write the report to a file instead of stdout");
}

SamplePlan make_plan(const Common& c, std::size_t dim,
                     std::vector<std::pair<double, double>> fallback) {
    SamplePlan p;
    p.n_points = c.points;
    p.seed = c.seed;
    if (c.box.empty()) {
        p.boxes = std::move(fallback);
    } else if (c.box.size() == 2) {
        p.boxes.assign(dim, {c.box[0], c.box[1]});
    } else if (c.box.size() == 2 * dim) {
        for (std::size_t i = 0; i < dim; ++i) p.boxes.push_back({c.box[2 * i], c.box[2 * i + 1]});
    } else {
        throw CLI::ValidationError("--box", "expected 2 or 2*dim numbers");
    }
    return p;
}

std::vector<std::pair<double, double>> default_box(std::size_t dim) {
    return std::vector<std::pair<double, double>>(dim, {0.5, 1.5});
}

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void stamp(Report& r, const Common& c) {
    r.notes.push_back("plan: points=" + std::to_string(c.points) +
                      " seed=" + std::to_string(c.seed));
}

std::string render_text(const std::vector<Report>& reps) {
    std::ostringstream out;
    for (const auto& r : reps) {
        out << (r.pass ? "pass" : "FAIL") << "  " << r.check;
        if (!r.case_name.empty()) out << "  [" << r.case_name << "]";
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  max=%.3e mean=%.3e tol=%.1e n=%d",
                      r.max_abs_residual, r.mean_abs_residual, r.tol, r.n_points);
        out << buf;
        if (r.lambda) {
            std::snprintf(buf, sizeof(buf), " lambda=%.12g spread=%.3e", *r.lambda,
                          r.lambda_spread);
            out << buf;
        }
        out << '\n';
        for (const auto& n : r.notes) out << "    note: " << n << '\n';
    }
    return out.str();
}

int emit_reports(const std::vector<Report>& reps, const Common& c) {
    std::string text;
    if (c.json) {
        if (reps.size() == 1) {
            text = reps[0].to_json().dump(2) + "\n";
        } else {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : reps) arr.push_back(r.to_json());
            text = arr.dump(2) + "\n";
        }
    } else {
        text = render_text(reps);
    }
    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << c.output << "'\n";
            return 2;
        }
        out << text;
    }
    for (const auto& r : reps)
        if (!r.pass) return 1;
    return 0;
}

int emit_outcomes(const std::string& name, const std::vector<CaseOutcome>& outs,
                  const Common& c) {
    std::string text;
    bool all_ok = outcomes_ok(outs);
    if (c.json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& o : outs) {
            nlohmann::ordered_json j = o.report.to_json();
            j["expected"] = o.expected_pass ? "pass" : "fail";
            j["matched"] = o.matched();
            arr.push_back(j);
        }
        nlohmann::ordered_json top;
        top["case"] = name;
        top["ok"] = all_ok;
        top["checks"] = arr;
        text = top.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << name << ": " << (all_ok ? "ok" : "MISMATCH") << '\n';
        for (const auto& o : outs) {
            out << "  " << (o.matched() ? "ok      " : "MISMATCH") << o.report.check << "  "
                << (o.report.pass ? "pass" : "fail") << " (expected "
                << (o.expected_pass ? "pass" : "fail") << ")\n";
            for (const auto& n : o.report.notes) out << "      note: " << n << '\n';
        }
        text = out.str();
    }
    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.output, std::ios::binary | std::ios::app);
        out << text;
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-curvature geometry workbench"};
    app.require_subcommand(1);

    Common c_check, c_res, c_cs, c_ext, c_lap, c_corpus;

    // check
    auto* sub_check = app.add_subcommand("check", "curvature verdicts for a metric file");
    std::string check_file, check_kind = "cc";
    double check_lambda = 0;
    bool check_estimate = false;
    sub_check->add_option("file", check_file, "metric file")->required();
    sub_check->add_option("--check", check_kind, "cc, flat or symmetric")
        ->check(CLI::IsMember({"cc", "flat", "symmetric"}))
        ->capture_default_str();
    auto* lam_opt = sub_check->add_option("--lambda", check_lambda, "curvature constant");
    auto* est_opt =
        sub_check->add_flag("--estimate", check_estimate, "estimate lambda from samples");
    lam_opt->excludes(est_opt);
    est_opt->excludes(lam_opt);
    add_common(sub_check, c_check);

    // residual
    auto* sub_res = app.add_subcommand("residual", "PDE residual scan over a field file");
    std::string res_file, res_system;
    double res_lambda = 0;
    sub_res->add_option("file", res_file, "file providing [fields] and [params]")->required();
    sub_res->add_option("--system", res_system, "system id")->required();
    auto* res_lam = sub_res->add_option("--lambda", res_lambda, "override lambda parameter");
    add_common(sub_res, c_res);

    // cs
    auto* sub_cs = app.add_subcommand("cs", "Chern-Simons density over sample points");
    std::string cs_file;
    bool cs_norm = false, cs_expect_zero = false;
    sub_cs->add_option("file", cs_file, "metric file")->required();
    sub_cs->add_flag("--normalized", cs_norm, "divide by sqrt(|det g|)");
    sub_cs->add_flag("--expect-zero", cs_expect_zero, "fail when the density exceeds tol");
    add_common(sub_cs, c_cs);

    // extend
    auto* sub_ext = app.add_subcommand("extend", "6D doubling of a 3D metric");
    std::string ext_file, ext_mode = "lc", ext_check = "flat";
    sub_ext->add_option("file", ext_file, "base metric file")->required();
    sub_ext->add_option("--mode", ext_mode, "lc, mod+ or mod-")
        ->check(CLI::IsMember({"lc", "mod+", "mod-"}))
        ->capture_default_str();
    sub_ext->add_option("--check", ext_check, "flat, symmetric or bundle")
        ->check(CLI::IsMember({"flat", "symmetric", "bundle"}))
        ->capture_default_str();
    add_common(sub_ext, c_ext);
    c_ext.points = 8; // order-4 jets in six variables; keep the default small

    // laplace1
    auto* sub_lap = app.add_subcommand("laplace1", "1-form Laplace eigenvalue residual");
    std::string lap_file;
    double lap_lambda = 0;
    sub_lap->add_option("file", lap_file, "metric file with fields 'w 1'..'w 3'")
        ->required();
    sub_lap->add_option("--lambda", lap_lambda, "eigenvalue")->required();
    add_common(sub_lap, c_lap);

    // corpus
    auto* sub_corpus = app.add_subcommand("corpus", "built-in example registry");
    std::string corpus_action, corpus_arg;
    sub_corpus->add_option("action", corpus_action, "list, run or emit")
        ->required()
        ->check(CLI::IsMember({"list", "run", "emit"}));
    sub_corpus->add_option("name", corpus_arg, "case name (run) or directory (emit)");
    add_common(sub_corpus, c_corpus);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sub_check)) {
            MetricSpec m = parse_metric_file(read_file_or_die(check_file));
            SamplePlan plan = make_plan(c_check, m.coords.size(), default_box(m.coords.size()));
            Report r;
            if (check_kind == "flat") {
                r = check_flat(m, plan, c_check.tol);
            } else if (check_kind == "symmetric") {
                r = check_symmetric(m, plan, c_check.tol);
            } else {
                std::optional<double> lam;
                if (lam_opt->count()) lam = check_lambda;
                r = check_constant_curvature(m, lam, plan, c_check.tol);
            }
            stamp(r, c_check);
            return emit_reports({r}, c_check);
        }

        if (app.got_subcommand(sub_res)) {
            MetricSpec m = parse_metric_file(read_file_or_die(res_file));
            SystemId sys = system_from_name(res_system);
            const SystemInfo& info = system_info(sys);
            std::map<std::string, Expr> fields;
            for (const auto& f : info.fields) fields[f] = m.field(f);
            std::map<std::string, double> params = m.params;
            if (res_lam->count()) params["lambda"] = res_lambda;
            SamplePlan plan =
                make_plan(c_res, info.coords.size(), default_box(info.coords.size()));
            Report r = residual_scan(sys, fields, params, plan, c_res.tol);
            stamp(r, c_res);
            return emit_reports({r}, c_res);
        }

        if (app.got_subcommand(sub_cs)) {
            MetricSpec m = parse_metric_file(read_file_or_die(cs_file));
            SamplePlan plan = make_plan(c_cs, m.coords.size(), default_box(m.coords.size()));
            auto pts = sample_points(plan, m.coords, m.params);
            Report r;
            r.check = cs_norm ? "cs_density_normalized" : "cs_density";
            r.n_points = static_cast<int>(pts.size());
            r.tol = c_cs.tol;
            double mx = 0, sum = 0;
            for (const auto& p : pts) {
                double v = cs_density_at(m, p, cs_norm);
                mx = std::max(mx, std::abs(v));
                sum += std::abs(v);
            }
            r.max_abs_residual = mx;
            r.mean_abs_residual = pts.empty() ? 0 : sum / pts.size();
            r.pass = cs_expect_zero ? mx <= c_cs.tol : true;
            if (!cs_expect_zero) r.notes.push_back("informational scan (no verdict)");
            stamp(r, c_cs);
            return emit_reports({r}, c_cs);
        }

        if (app.got_subcommand(sub_ext)) {
            MetricSpec base = parse_metric_file(read_file_or_die(ext_file));
            ExtensionMode mode = extension_mode_from_name(ext_mode);
            std::vector<std::pair<double, double>> fb = default_box(3);
            for (int i = 0; i < 3; ++i) fb.push_back({-1.0, 1.0});
            if (mode == ExtensionMode::LeviCivita) {
                MetricSpec ext = extend(base, mode);
                SamplePlan plan = make_plan(c_ext, 6, fb);
                Report r;
                if (ext_check == "flat") {
                    r = check_flat(ext, plan, c_ext.tol);
                } else if (ext_check == "symmetric") {
                    r = check_symmetric(ext, plan, c_ext.tol);
                } else {
                    auto pts = sample_points(plan, ext.coords, ext.params);
                    r.check = "extension_bundle";
                    r.n_points = static_cast<int>(pts.size());
                    double mx = 0;
                    Signature sig = metric_signature_at(ext, pts.front());
                    for (const auto& p : pts) {
                        CurvatureBundle b = bundle_at(ext, p);
                        for (double v : b.riemann_low) mx = std::max(mx, std::abs(v));
                    }
                    r.max_abs_residual = mx;
                    r.pass = true;
                    r.notes.push_back("signature at first point: (" +
                                      std::to_string(sig.n_pos) + "," +
                                      std::to_string(sig.n_neg) + "," +
                                      std::to_string(sig.n_zero) + ")");
                    r.notes.push_back("informational scan (no verdict)");
                }
                stamp(r, c_ext);
                return emit_reports({r}, c_ext);
            }
            // modified modes: curvature of the connection itself
            SamplePlan plan = make_plan(c_ext, 3, default_box(3));
            auto pts = sample_points(plan, base.coords, base.params);
            Report r;
            r.check = std::string("connection_") + ext_check + ":" + ext_mode;
            r.n_points = static_cast<int>(pts.size());
            r.tol = c_ext.tol;
            double mxr = 0, mxn = 0;
            for (const auto& p : pts) {
                ConnectionCurvature cc =
                    connection_curvature_at(base, mode, p, ext_check != "flat");
                mxr = std::max(mxr, cc.max_abs_riemann());
                if (ext_check != "flat") mxn = std::max(mxn, cc.max_abs_nabla());
            }
            if (ext_check == "flat") {
                r.max_abs_residual = mxr;
                r.pass = mxr <= c_ext.tol;
            } else if (ext_check == "symmetric") {
                r.max_abs_residual = mxn;
                r.pass = mxn <= c_ext.tol;
                r.notes.push_back("max |R| = " + std::to_string(mxr));
            } else {
                r.max_abs_residual = mxr;
                r.mean_abs_residual = mxn;
                r.pass = true;
                r.notes.push_back("informational scan (no verdict)");
            }
            if (mode == ExtensionMode::ModifiedMinus)
                r.notes.push_back(
                    "minus mode realized with a formal unit of square -1 (interpretation)");
            stamp(r, c_ext);
            return emit_reports({r}, c_ext);
        }

        if (app.got_subcommand(sub_lap)) {
            MetricSpec m = parse_metric_file(read_file_or_die(lap_file));
            std::array<Expr, 3> w = {m.field("w 1"), m.field("w 2"), m.field("w 3")};
            SamplePlan plan = make_plan(c_lap, m.coords.size(), default_box(m.coords.size()));
            auto pts = sample_points(plan, m.coords, m.params);
            Report r;
            r.check = "laplace_one_form";
            r.lambda = lap_lambda;
            r.n_points = static_cast<int>(pts.size());
            r.tol = c_lap.tol;
            double mx = 0, sum = 0;
            for (const auto& p : pts) {
                auto res = laplace_one_form_at(m, w, p, lap_lambda);
                for (double v : res) {
                    mx = std::max(mx, std::abs(v));
                    sum += std::abs(v);
                }
            }
            r.max_abs_residual = mx;
            r.mean_abs_residual = pts.empty() ? 0 : sum / (3.0 * pts.size());
            r.pass = mx <= c_lap.tol;
            stamp(r, c_lap);
            return emit_reports({r}, c_lap);
        }

        if (app.got_subcommand(sub_corpus)) {
            if (corpus_action == "list") {
                if (c_corpus.json) {
                    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                    for (const auto& c : corpus_cases())
                        arr.push_back({{"name", c.name}, {"summary", c.summary}});
                    std::cout << arr.dump(2) << "\n";
                } else {
                    for (const auto& c : corpus_cases())
                        std::cout << c.name << "  -  " << c.summary << "\n";
                }
                return 0;
            }
            if (corpus_action == "emit") {
                std::string dir = corpus_arg.empty() ? "cases" : corpus_arg;
                std::filesystem::create_directories(dir);
                for (const auto& c : corpus_cases()) {
                    if (!c.metric) continue;
                    std::ofstream out(dir + "/" + c.name + ".metric", std::ios::binary);
                    out << "# " << c.summary << "\n" << write_metric_file(c.metric());
                    std::cout << dir << "/" << c.name << ".metric\n";
                }
                return 0;
            }
            // run
            int rc = 0;
            if (!corpus_arg.empty()) {
                rc = emit_outcomes(corpus_arg, corpus_run(corpus_arg), c_corpus);
            } else {
                for (const auto& c : corpus_cases()) {
                    int one = emit_outcomes(c.name, c.run(), c_corpus);
                    rc = std::max(rc, one);
                }
            }
            return rc;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
