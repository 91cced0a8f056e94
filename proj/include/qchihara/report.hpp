#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qchihara/multipoly.hpp"

namespace qchihara {

/// One instance of an exact identity, e.g. "n=4" or "k=2,n=5". The identity holds
/// for that instance iff residual is the zero polynomial.
struct ExactCase {
    std::string label;
    MultiPoly residual;
    bool holds() const noexcept { return residual.is_zero(); }
};

struct ExactReport {
    std::string identity;
    std::vector<ExactCase> cases;
    double elapsed_ms = 0.0;

    bool ok() const {
        return std::all_of(cases.begin(), cases.end(), [](const ExactCase& c) { return c.holds(); });
    }
    const ExactCase* first_failure() const {
        for (const auto& c : cases)
            if (!c.holds()) return &c;
        return nullptr;
    }
    /// Largest |coefficient| over all residuals; 0 when the identity holds everywhere.
    double residual_norm() const {
        double m = 0.0;
        for (const auto& c : cases) m = std::max(m, c.residual.max_abs_coefficient());
        return m;
    }
};

struct NumericCase {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  ///< as defined by the producing check (absolute unless documented)
    double tolerance = 0.0;
    bool passed() const noexcept { return residual < tolerance; }
};

struct NumericReport {
    std::string identity;
    std::vector<NumericCase> cases;
    double elapsed_ms = 0.0;

    bool ok() const {
        return std::all_of(cases.begin(), cases.end(), [](const NumericCase& c) { return c.passed(); });
    }
    const NumericCase* worst() const {
        const NumericCase* w = nullptr;
        for (const auto& c : cases)
            if (!w || c.residual / c.tolerance > w->residual / w->tolerance) w = &c;
        return w;
    }
    double residual_norm() const {
        double m = 0.0;
        for (const auto& c : cases) m = std::max(m, c.residual);
        return m;
    }
};

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace qchihara
