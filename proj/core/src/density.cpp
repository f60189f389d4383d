#include "pwmod/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pwmod {

std::vector<std::vector<double>> s_matrix(const PerturbationPair<double>& p) {
    const size_t n = p.order() + 1;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    m[0][0] = 1.0;
    for (size_t i = 1; i < n; ++i) {
        m[i][0] = p.gamma[i - 1];   // f_0 coordinates
        m[0][i] = -p.delta[i - 1];  // f_i = e_i - delta_i e_0
        m[i][i] = 1.0;
    }
    return m;
}

std::vector<double> apply_s(const PerturbationPair<double>& p, const std::vector<double>& v) {
    auto m = s_matrix(p);
    const size_t n = m.size();
    if (v.size() != n) throw std::invalid_argument("apply_s: dimension mismatch");
    std::vector<double> out(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i] += m[i][j] * v[j];
    return out;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-28) break;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_singular_oracle(const PerturbationPair<double>& p) {
    auto s = s_matrix(p);
    const size_t n = s.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double acc = 0;
            for (size_t k = 0; k < n; ++k) acc += s[k][i] * s[k][j];
            g[i][j] = acc;
        }
    double lambda = jacobi_eigenvalues(std::move(g)).front();
    return lambda <= 0 ? 0.0 : std::sqrt(lambda);
}

}  // namespace pwmod
