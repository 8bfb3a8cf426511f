#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace curvlab {

struct Report {
    std::string case_name;
    std::string check;
    std::optional<double> lambda;       // value used or estimated
    double lambda_spread = 0.0;         // max - min of per-point estimates
    int n_points = 0;
    double max_abs_residual = 0.0;
    double mean_abs_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["case"] = case_name;
        j["check"] = check;
        if (lambda)
            j["lambda"] = *lambda;
        else
            j["lambda"] = nullptr;
        j["lambda_spread"] = lambda_spread;
        j["n_points"] = n_points;
        j["max_abs_residual"] = max_abs_residual;
        j["mean_abs_residual"] = mean_abs_residual;
        j["tol"] = tol;
        j["verdict"] = pass ? "pass" : "fail";
        j["notes"] = notes;
        return j;
    }
};

} // namespace curvlab
