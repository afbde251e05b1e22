#pragma once

#include "bigscalar.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace horobowtie {

/// Norm on nonnegative component-distance pairs with N(1,1) = 1 and
/// N(a,b) >= (a+b)/2. The normalized l_r family is
/// N_r(a,b) = ((a^r + b^r)/2)^{1/r}; c_norm_bound is an exact upper bound
/// on the comparison constant C_N fed to the constants ledger.
class AdmissibleNorm {
  public:
    static AdmissibleNorm lr(double r) {
        if (r < 1.0) throw std::invalid_argument("AdmissibleNorm: l_r requires r >= 1");
        AdmissibleNorm n;
        n.name_ = format_lr_name(r);
        n.eval_ = [r](double a, double b) {
            if (r == 1.0) return (a + b) / 2.0;
            return std::pow((std::pow(a, r) + std::pow(b, r)) / 2.0, 1.0 / r);
        };
        n.c_norm_ = BigScalar(2);
        return n;
    }

    static AdmissibleNorm linf() {
        AdmissibleNorm n;
        n.name_ = "linf";
        n.eval_ = [](double a, double b) { return std::max(a, b); };
        n.c_norm_ = BigScalar(2);
        return n;
    }

    static AdmissibleNorm custom(std::string name, std::function<double(double, double)> eval,
                                 BigScalar c_norm_bound) {
        AdmissibleNorm n;
        n.name_ = std::move(name);
        n.eval_ = std::move(eval);
        n.c_norm_ = std::move(c_norm_bound);
        return n;
    }

    /// Parses the CLI norm spec `l<r>` (e.g. "l1", "l2", "l2.5", "linf").
    static AdmissibleNorm parse(std::string_view spec) {
        if (spec.size() < 2 || spec[0] != 'l')
            throw std::invalid_argument("norm spec: expected l<r> or linf, got '" + std::string(spec) + "'");
        if (spec == "linf") return linf();
        char* end = nullptr;
        std::string body(spec.substr(1));
        double r = std::strtod(body.c_str(), &end);
        if (end != body.c_str() + body.size() || !(r >= 1.0))
            throw std::invalid_argument("norm spec: bad parameter in '" + std::string(spec) + "'");
        return lr(r);
    }

    double operator()(double a, double b) const {
        if (a < 0.0 || b < 0.0) throw std::invalid_argument("norm: negative component length");
        return eval_(a, b);
    }

    const std::string& name() const { return name_; }
    const BigScalar& c_norm_bound() const { return c_norm_; }

  private:
    static std::string format_lr_name(double r) {
        if (r == static_cast<long long>(r)) return "l" + std::to_string(static_cast<long long>(r));
        char buf[32];
        std::snprintf(buf, sizeof(buf), "l%g", r);
        return buf;
    }

    std::string name_;
    std::function<double(double, double)> eval_;
    BigScalar c_norm_ = BigScalar(2);
};

struct NormCertification {
    bool passes = false;
    double measured_c_n = 0.0;
    double worst_a = 0.0, worst_b = 0.0;  // where N/(mean) is largest
    std::string failure;
};

/// Grid check on the simplex a + b = 2 (the conditions are 1-homogeneous,
/// so the simplex is exhaustive up to resolution).
inline NormCertification certify_admissible(const AdmissibleNorm& n, int grid_resolution = 4096) {
    if (grid_resolution < 16) throw std::invalid_argument("certify_admissible: resolution must be >= 16");
    NormCertification report;
    if (std::fabs(n(1.0, 1.0) - 1.0) > 1e-12) {
        report.failure = "N(1,1) != 1";
        return report;
    }
    double worst = 0.0;
    for (int i = 0; i <= grid_resolution; ++i) {
        const double a = 2.0 * i / grid_resolution;
        const double b = 2.0 - a;
        const double mean = 1.0;  // (a+b)/2 on the simplex
        const double val = n(a, b);
        if (val < mean - 1e-9) {
            report.failure = "N(a,b) < (a+b)/2 at a=" + std::to_string(a);
            return report;
        }
        if (val / mean > worst) {
            worst = val / mean;
            report.worst_a = a;
            report.worst_b = b;
        }
    }
    report.passes = true;
    report.measured_c_n = worst;
    return report;
}

}  // namespace horobowtie
