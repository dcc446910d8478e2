#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace robstat {

enum class ChangeShape { none, step, logistic };
enum class ModelClass { level_only, level_and_slope };  // Models I and III

inline const char* to_string(ChangeShape s) {
    switch (s) {
        case ChangeShape::none: return "none";
        case ChangeShape::step: return "step";
        case ChangeShape::logistic: return "logistic";
    }
    return "?";
}

inline const char* to_string(ModelClass c) {
    return c == ModelClass::level_only ? "I" : "III";
}

/// Deterministic trend family: polynomial of given order in s = t/T plus
/// n_changes regime changes, each a step or logistic transition shifting the
/// level (Model I) or level and slope (Model III).
struct TrendSpec {
    int order = 1;  // 1 = linear, 2 = quadratic
    ModelClass model_class = ModelClass::level_and_slope;
    ChangeShape shape = ChangeShape::none;
    int n_changes = 0;

    void validate() const {
        if (order != 1 && order != 2) throw std::invalid_argument("TrendSpec: order must be 1 or 2");
        if (n_changes < 0 || n_changes > 2)
            throw std::invalid_argument("TrendSpec: n_changes must be 0, 1, or 2");
        if ((n_changes == 0) != (shape == ChangeShape::none))
            throw std::invalid_argument("TrendSpec: n_changes == 0 iff shape == none");
    }

    int linear_param_count() const {
        return order + 1 + n_changes * (model_class == ModelClass::level_and_slope ? 2 : 1);
    }
    int nonlinear_param_count() const {
        return n_changes * (shape == ChangeShape::logistic ? 2 : 1);
    }
    int param_count() const { return linear_param_count() + nonlinear_param_count(); }

    bool operator==(const TrendSpec&) const = default;

    /// Human-readable label matching report conventions, e.g.
    /// "Quadratic Break III(2)" or plain "Quadratic" for no changes.
    std::string label() const {
        std::string s = order == 2 ? "Quadratic" : "Linear";
        if (n_changes == 0) return s;
        s += shape == ChangeShape::step ? " Break " : " Smooth ";
        s += to_string(model_class);
        s += "(" + std::to_string(n_changes) + ")";
        return s;
    }
};

/// One regime change: level shift delta (and slope shift eta under Model III)
/// switched on by F(t/T; lambda[, gamma]).
struct ChangeParams {
    double delta = 0.0;
    double eta = 0.0;     // used only under Model III
    double lambda = 0.0;  // relative position in (0,1)
    double gamma = 0.0;   // transition speed, logistic shape only
};

struct TrendParams {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;  // used only when order == 2
    std::vector<ChangeParams> changes;

    void validate(const TrendSpec& spec) const {
        spec.validate();
        if (static_cast<int>(changes.size()) != spec.n_changes)
            throw std::invalid_argument("TrendParams: change count does not match spec");
        for (std::size_t j = 0; j < changes.size(); ++j) {
            const auto& c = changes[j];
            if (!(c.lambda > 0.0 && c.lambda < 1.0))
                throw std::invalid_argument("TrendParams: lambda must lie in (0,1)");
            if (spec.shape == ChangeShape::logistic && !(c.gamma > 0.0))
                throw std::invalid_argument("TrendParams: gamma must be positive");
            if (j > 0 && !(changes[j - 1].lambda < c.lambda))
                throw std::invalid_argument("TrendParams: lambdas must be strictly increasing");
        }
    }
};

/// Nonlinear part of one change, the candidate coordinates of the grid search.
struct ChangePoint {
    double lambda = 0.0;
    double gamma = 0.0;  // ignored for step shape
};

/// Instant transition: 1 strictly after the break fraction, 0 at or before.
inline double transition_step(double s, double lambda) { return s > lambda ? 1.0 : 0.0; }

/// Logistic transition with midpoint lambda and speed gamma.  Saturates when
/// the exponent magnitude exceeds 700 to avoid overflow.
inline double transition_logistic(double s, double lambda, double gamma) {
    const double x = gamma * (s - lambda);
    if (x > 700.0) return 1.0;
    if (x < -700.0) return 0.0;
    return 1.0 / (1.0 + std::exp(-x));
}

inline double transition(ChangeShape shape, double s, double lambda, double gamma) {
    return shape == ChangeShape::step ? transition_step(s, lambda)
                                      : transition_logistic(s, lambda, gamma);
}

/// Design matrix of the trend family evaluated at s = t/T, t = 1..T.
/// Columns: 1, s, (s^2 if quadratic), then per change F_j and (s*F_j under
/// Model III).
inline Eigen::MatrixXd regressor_matrix(const TrendSpec& spec, const std::vector<ChangePoint>& nonlinear,
                                        int T) {
    spec.validate();
    if (static_cast<int>(nonlinear.size()) != spec.n_changes)
        throw std::invalid_argument("regressor_matrix: nonlinear parameter count mismatch");
    const bool slope = spec.model_class == ModelClass::level_and_slope;
    const int p = spec.linear_param_count();
    Eigen::MatrixXd X(T, p);
    for (int t = 1; t <= T; ++t) {
        const double s = static_cast<double>(t) / T;
        int c = 0;
        X(t - 1, c++) = 1.0;
        X(t - 1, c++) = s;
        if (spec.order == 2) X(t - 1, c++) = s * s;
        for (const auto& cp : nonlinear) {
            const double f = transition(spec.shape, s, cp.lambda, cp.gamma);
            X(t - 1, c++) = f;
            if (slope) X(t - 1, c++) = s * f;
        }
    }
    return X;
}

/// Linear coefficient vector in the column order of regressor_matrix.
inline Eigen::VectorXd coefficient_vector(const TrendSpec& spec, const TrendParams& params) {
    params.validate(spec);
    Eigen::VectorXd beta(spec.linear_param_count());
    int c = 0;
    beta(c++) = params.beta0;
    beta(c++) = params.beta1;
    if (spec.order == 2) beta(c++) = params.beta2;
    for (const auto& ch : params.changes) {
        beta(c++) = ch.delta;
        if (spec.model_class == ModelClass::level_and_slope) beta(c++) = ch.eta;
    }
    return beta;
}

inline std::vector<ChangePoint> change_points(const TrendParams& params) {
    std::vector<ChangePoint> pts;
    pts.reserve(params.changes.size());
    for (const auto& c : params.changes) pts.push_back({c.lambda, c.gamma});
    return pts;
}

/// Trend values f(t/T, theta) for t = 1..T.
inline std::vector<double> eval_trend(const TrendSpec& spec, const TrendParams& params, int T) {
    const Eigen::MatrixXd X = regressor_matrix(spec, change_points(params), T);
    const Eigen::VectorXd f = X * coefficient_vector(spec, params);
    return std::vector<double>(f.data(), f.data() + f.size());
}

/// Exact first difference of the trend design: rows t = 2..T hold
/// X(t,:) - X(t-1,:) with the constant column dropped.  Step changes become
/// impulse columns; the remaining columns difference smoothly.
inline Eigen::MatrixXd diff_regressor_matrix(const TrendSpec& spec,
                                             const std::vector<ChangePoint>& nonlinear, int T) {
    const Eigen::MatrixXd X = regressor_matrix(spec, nonlinear, T);
    return X.bottomRows(T - 1).rightCols(X.cols() - 1) - X.topRows(T - 1).rightCols(X.cols() - 1);
}

// --- JSON serialization -----------------------------------------------------

inline void to_json(nlohmann::json& j, const TrendSpec& spec) {
    j = nlohmann::json{{"order", spec.order},
                       {"class", to_string(spec.model_class)},
                       {"shape", to_string(spec.shape)},
                       {"n_changes", spec.n_changes}};
}

inline void from_json(const nlohmann::json& j, TrendSpec& spec) {
    spec.order = j.at("order").get<int>();
    const std::string cls = j.at("class").get<std::string>();
    spec.model_class = cls == "I" ? ModelClass::level_only : ModelClass::level_and_slope;
    const std::string shape = j.at("shape").get<std::string>();
    spec.shape = shape == "step" ? ChangeShape::step
                                 : (shape == "logistic" ? ChangeShape::logistic : ChangeShape::none);
    spec.n_changes = j.at("n_changes").get<int>();
    spec.validate();
}

inline void to_json(nlohmann::json& j, const ChangeParams& c) {
    j = nlohmann::json{{"delta", c.delta}, {"eta", c.eta}, {"lambda", c.lambda}, {"gamma", c.gamma}};
}

inline void from_json(const nlohmann::json& j, ChangeParams& c) {
    c.delta = j.at("delta").get<double>();
    c.eta = j.at("eta").get<double>();
    c.lambda = j.at("lambda").get<double>();
    c.gamma = j.at("gamma").get<double>();
}

inline void to_json(nlohmann::json& j, const TrendParams& p) {
    j = nlohmann::json{{"beta0", p.beta0}, {"beta1", p.beta1}, {"beta2", p.beta2}, {"changes", p.changes}};
}

inline void from_json(const nlohmann::json& j, TrendParams& p) {
    p.beta0 = j.at("beta0").get<double>();
    p.beta1 = j.at("beta1").get<double>();
    p.beta2 = j.at("beta2").get<double>();
    p.changes = j.at("changes").get<std::vector<ChangeParams>>();
}

/// Parse spec selector strings such as "quad-break-III-2", "lin-smooth-I-1",
/// "quad-none" or "quadratic"/"linear".
inline TrendSpec parse_spec(const std::string& text) {
    auto lower = text;
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

    std::vector<std::string> parts;
    std::string cur;
    for (char ch : lower + "-") {
        if (ch == '-') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (parts.empty()) throw std::invalid_argument("empty spec selector");

    TrendSpec spec;
    if (parts[0] == "lin" || parts[0] == "linear")
        spec.order = 1;
    else if (parts[0] == "quad" || parts[0] == "quadratic")
        spec.order = 2;
    else
        throw std::invalid_argument("spec selector must start with lin|quad: '" + text + "'");

    if (parts.size() == 1 || parts[1] == "none") {
        spec.shape = ChangeShape::none;
        spec.n_changes = 0;
        spec.validate();
        return spec;
    }
    if (parts[1] == "break" || parts[1] == "step")
        spec.shape = ChangeShape::step;
    else if (parts[1] == "smooth" || parts[1] == "logistic")
        spec.shape = ChangeShape::logistic;
    else
        throw std::invalid_argument("unknown change shape in spec selector '" + text + "'");
    if (parts.size() != 4) throw std::invalid_argument("spec selector needs class and count: '" + text + "'");
    if (parts[2] == "i")
        spec.model_class = ModelClass::level_only;
    else if (parts[2] == "iii")
        spec.model_class = ModelClass::level_and_slope;
    else
        throw std::invalid_argument("model class must be I or III: '" + text + "'");
    spec.n_changes = std::stoi(parts[3]);
    spec.validate();
    return spec;
}

}  // namespace robstat
