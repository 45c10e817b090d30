#include "dgcurv/numerics.hpp"

#include "dgcurv/errors.hpp"
#include "dgcurv/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace dgcurv {

Vector solve_linear(const Matrix& a, std::span<const double> b) {
    const std::size_t n = a.rows();
    if (!a.square() || b.size() != n) throw NumericalError("solve_linear: dimension mismatch");

    Matrix lu = a;
    Vector x(b.begin(), b.end());
    const double scale = std::max(1.0, a.norm_inf());

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) pivot = r;
        const double p = lu(pivot, k);
        if (std::abs(p) <= tol::kSingularPivot * scale)
            throw NumericalError("solve_linear: singular matrix, pivot " + std::to_string(p), std::abs(p));
        if (pivot != k) {
            std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
            std::swap(x[k], x[pivot]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = lu(r, k) / p;
            if (factor == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) lu(r, c) -= factor * lu(k, c);
            x[r] -= factor * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= lu(k, c) * x[c];
        x[k] = s / lu(k, k);
    }
    return x;
}

SymmetricEigenResult sym_eig(const Matrix& input) {
    if (!input.square()) throw NumericalError("sym_eig: matrix is not square");
    const std::size_t n = input.rows();

    Matrix a = input;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) a(r, c) = a(c, r);
    Matrix v = Matrix::identity(n);

    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    frob = std::sqrt(frob);
    const double threshold = tol::kJacobiOffDiag * std::max(frob, std::numeric_limits<double>::min());

    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += 2.0 * a(r, c) * a(r, c);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_diagonal() > threshold) {
        if (++sweep > tol::kJacobiMaxSweeps)
            throw NumericalError("sym_eig: Jacobi did not converge", off_diagonal());
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation zeroing a(p, q).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    SymmetricEigenResult out{Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

double min_eigenvalue(const Matrix& a) {
    if (a.rows() == 0) return std::numeric_limits<double>::infinity();
    return sym_eig(a).eigenvalues.front();
}

namespace {

// Columns `idx` of m, as an n x idx.size() matrix.
Matrix take_columns(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix out(m.rows(), idx.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = 0; k < idx.size(); ++k) out(r, k) = m(r, idx[k]);
    return out;
}

// Fixes the sign so the largest-magnitude component is positive.
void canonical_sign(Vector& x) {
    if (x.empty()) return;
    auto it = std::max_element(x.begin(), x.end(), [](double p, double q) { return std::abs(p) < std::abs(q); });
    if (*it < 0.0)
        for (double& e : x) e = -e;
}

Vector column(const Matrix& m, std::size_t c) {
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, c);
    return out;
}

}  // namespace

PencilResult pencil_min_eig(const Matrix& a, const Matrix& g, double kernel_rel) {
    const std::size_t n = a.rows();
    if (!a.square() || !g.square() || g.rows() != n) throw NumericalError("pencil_min_eig: dimension mismatch");

    const auto ge = sym_eig(g);
    const double scale = std::max(1.0, ge.eigenvalues.empty() ? 0.0 : ge.eigenvalues.back());
    const double kernel_eps = kernel_rel * scale;

    std::vector<std::size_t> kernel, complement;
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = ge.eigenvalues[k];
        if (lambda < -tol::kKernelGapRelative * scale)
            throw NumericalError("pencil_min_eig: G is not positive semidefinite", lambda);
        (lambda <= kernel_eps ? kernel : complement).push_back(k);
    }

    PencilResult result;
    result.gap = complement.empty() ? 0.0 : ge.eigenvalues[complement.front()];
    if (!complement.empty() && result.gap < tol::kKernelGapRelative * scale)
        throw NumericalError("pencil_min_eig: ambiguous kernel split, gap " + std::to_string(result.gap),
                             result.gap);

    const Matrix z = take_columns(ge.eigenvectors, kernel);
    const Matrix u = take_columns(ge.eigenvectors, complement);
    const Matrix zt = z.transposed();
    const Matrix ut = u.transposed();
    const double psd_tol = tol::kKernelPsd * std::max(1.0, a.norm_inf());

    // A restricted to ker(G).
    Matrix azz = zt * a * z;
    azz.symmetrize();
    const auto ke = sym_eig(azz);
    if (!kernel.empty() && ke.eigenvalues.front() < -psd_tol) {
        result.kernel_ok = false;
        result.min_ratio = -std::numeric_limits<double>::infinity();
        result.extremal = z * column(ke.eigenvectors, 0);
        canonical_sign(result.extremal);
        return result;
    }

    const Matrix azu = zt * a * u;
    // Pseudo-inverse of A_zz on its range; null directions must not couple to the complement.
    Matrix azz_pinv(kernel.size(), kernel.size());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        const Vector q = column(ke.eigenvectors, k);
        const double mu = ke.eigenvalues[k];
        if (mu <= psd_tol) {
            const Vector coupling = azu.transposed() * q;
            if (norm_inf(coupling) > psd_tol) {
                result.kernel_ok = false;
                result.min_ratio = -std::numeric_limits<double>::infinity();
                result.extremal = z * q;
                canonical_sign(result.extremal);
                return result;
            }
            continue;
        }
        azz_pinv += (1.0 / mu) * outer(q, q);
    }

    if (complement.empty()) {
        result.min_ratio = std::numeric_limits<double>::infinity();
        return result;
    }

    Matrix schur = ut * a * u;
    schur -= azu.transposed() * azz_pinv * azu;

    // Whiten by Λ^{-1/2}.
    Vector inv_sqrt(complement.size());
    for (std::size_t k = 0; k < complement.size(); ++k) inv_sqrt[k] = 1.0 / std::sqrt(ge.eigenvalues[complement[k]]);
    for (std::size_t r = 0; r < schur.rows(); ++r)
        for (std::size_t c = 0; c < schur.cols(); ++c) schur(r, c) *= inv_sqrt[r] * inv_sqrt[c];
    schur.symmetrize();

    const auto we = sym_eig(schur);
    result.min_ratio = we.eigenvalues.front();

    Vector coeff = column(we.eigenvectors, 0);
    for (std::size_t k = 0; k < coeff.size(); ++k) coeff[k] *= inv_sqrt[k];
    Vector f = u * coeff;
    if (!kernel.empty()) {
        const Vector zc = azz_pinv * (azu * coeff);
        const Vector zpart = z * zc;
        for (std::size_t r = 0; r < n; ++r) f[r] -= zpart[r];
    }
    canonical_sign(f);
    result.extremal = std::move(f);
    return result;
}

}  // namespace dgcurv
