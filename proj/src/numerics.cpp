#include "ultraspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ultraspec/error.hpp"
#include "ultraspec/kernels.hpp"
#include "ultraspec/tolerances.hpp"

namespace ultraspec {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DomainError("ragged matrix initializer");
        for (double v : r) {
            if (!std::isfinite(v)) throw DomainError("non-finite matrix entry");
            data_.push_back(v);
        }
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        const auto rr = row(r);
        for (std::size_t c = 0; c < cols_; ++c) acc += rr[c] * x[c];
        y[r] = acc;
    }
    return y;
}

double DenseMatrix::norm_inf() const noexcept {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (double v : row(r)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

LuFactorization::LuFactorization(DenseMatrix a)
    : lu_(std::move(a)), perm_(lu_.rows()), min_pivot_(std::numeric_limits<double>::infinity()) {
    if (lu_.rows() != lu_.cols()) throw DomainError("LU requires a square matrix");
    for (double v : lu_.data()) {
        if (!std::isfinite(v)) throw DomainError("LU input has non-finite entries");
    }
    norm_ = lu_.norm_inf();
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const auto& k = kernels::best();

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu_(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu_(r, col)) > best) {
                best = std::abs(lu_(r, col));
                piv = r;
            }
        }
        if (best < tol::singular_pivot) throw SingularMatrixError(col, best);
        min_pivot_ = std::min(min_pivot_, best);
        if (piv != col) {
            std::swap_ranges(lu_.row(col).begin(), lu_.row(col).end(), lu_.row(piv).begin());
            std::swap(perm_[col], perm_[piv]);
        }
        const double pivot = lu_(col, col);
        const auto pivot_tail = lu_.row(col).subspan(col + 1);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = lu_(r, col) / pivot;
            lu_(r, col) = factor;
            if (factor != 0.0) k.axpy(-factor, pivot_tail, lu_.row(r).subspan(col + 1));
        }
    }
    if (n == 0) min_pivot_ = 0.0;
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw DomainError("right-hand side has the wrong length");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
        double acc = x[i];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
        x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= lu_(i, j) * x[j];
        x[i] = acc / lu_(i, i);
    }
    return x;
}

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b) {
    return LuFactorization(a).solve(b);
}

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          std::vector<double> x0, double tol, int max_iter) {
    NewtonResult out{std::move(x0), {}};
    auto& rep = out.report;
    rep.min_pivot = std::numeric_limits<double>::infinity();

    auto f = residual(out.x);
    double fnorm = norm_inf(f);
    while (true) {
        rep.final_residual_norm = fnorm;
        if (fnorm <= tol) {
            rep.converged = true;
            break;
        }
        if (rep.iterations >= max_iter) break;

        const LuFactorization lu(jacobian(out.x));
        rep.min_pivot = std::min(rep.min_pivot, lu.min_pivot());
        rep.jacobian_norm = lu.norm_inf();
        const auto delta = lu.solve(f);

        double scale = 1.0;
        std::vector<double> trial(out.x.size());
        std::vector<double> ftrial;
        double trial_norm = 0.0;
        for (int halving = 0; halving <= tol::newton_max_halvings; ++halving) {
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = out.x[i] - scale * delta[i];
            ftrial = residual(trial);
            trial_norm = norm_inf(ftrial);
            if (trial_norm < fnorm || !std::isfinite(fnorm)) break;
            if (halving < tol::newton_max_halvings) scale *= 0.5;
        }
        ++rep.iterations;
        rep.step_norms.push_back(scale * norm_inf(delta));
        out.x = std::move(trial);
        f = std::move(ftrial);
        fnorm = trial_norm;
    }
    if (rep.iterations == 0) rep.min_pivot = 0.0;
    return out;
}

}  // namespace ultraspec
