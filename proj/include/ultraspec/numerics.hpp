#pragma once

// Small dense linear algebra and a damped Newton iteration.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ultraspec {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    /// Throws DomainError on ragged rows or non-finite entries.
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<const double> data() const noexcept { return data_; }

    std::vector<double> multiply(std::span<const double> x) const;
    double norm_inf() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double norm_inf(std::span<const double> v) noexcept;

/// PA = LU with partial pivoting. Throws SingularMatrixError when a pivot
/// magnitude drops below tol::singular_pivot.
class LuFactorization {
public:
    explicit LuFactorization(DenseMatrix a);

    std::vector<double> solve(std::span<const double> b) const;

    /// Smallest |pivot| encountered.
    double min_pivot() const noexcept { return min_pivot_; }
    /// ||A||_inf of the matrix that was factored.
    double norm_inf() const noexcept { return norm_; }

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    double min_pivot_;
    double norm_;
};

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b);

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    double final_residual_norm = 0.0;
    std::vector<double> step_norms;
    /// Smallest LU pivot over all Jacobian factorizations.
    double min_pivot = 0.0;
    double jacobian_norm = 0.0;
};

struct NewtonResult {
    std::vector<double> x;
    NewtonReport report;
};

using ResidualFn = std::function<std::vector<double>(std::span<const double>)>;
using JacobianFn = std::function<DenseMatrix(std::span<const double>)>;

/// Newton with step halving (up to tol::newton_max_halvings times while the
/// residual does not decrease). Stops when ||F(x)||_inf <= tol. Running out of
/// iterations is reported, not thrown; a singular Jacobian throws.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          std::vector<double> x0, double tol, int max_iter);

}  // namespace ultraspec
