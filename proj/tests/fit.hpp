// fit.hpp: least-squares fits used to judge scan shapes.

#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace fconv::testing {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// y = intercept + slope * x
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        a(k, 0) = 1.0;
        a(k, 1) = x[k];
        b(k) = y[k];
    }
    const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
    return {c(1), c(0)};
}

inline LineFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        lx.push_back(std::log(x[k]));
        ly.push_back(std::log(y[k]));
    }
    return fit_line(lx, ly);
}

// y = offset + amplitude * cos(phi + phase)
struct SinusoidFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    double max_residual = 0.0;

    double visibility() const { return offset == 0.0 ? 0.0 : amplitude / offset; }
};

inline SinusoidFit fit_sinusoid(const std::vector<double>& phi, const std::vector<double>& y) {
    const auto n = static_cast<Eigen::Index>(phi.size());
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd b(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        a(k, 0) = 1.0;
        a(k, 1) = std::cos(phi[k]);
        a(k, 2) = std::sin(phi[k]);
        b(k) = y[k];
    }
    const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
    SinusoidFit f;
    f.offset = c(0);
    f.amplitude = std::hypot(c(1), c(2));
    // B cos + C sin = R cos(phi + phase) with phase = atan2(-C, B)
    f.phase = std::atan2(-c(2), c(1));
    f.max_residual = (a * c - b).cwiseAbs().maxCoeff();
    return f;
}

}  // namespace fconv::testing
